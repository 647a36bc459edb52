#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flowguard {

enum class ErrorCode {
    EmptyToken,
    InvalidLabel,
    EmptyGraph,
    MalformedGraphFile,
    UnknownState,
    SequenceTooShort,
    NonPositiveDuration,
    MissingReferenceTime,
    SourceExhausted,
    MalformedRow,
    MalformedPrediction,
    MalformedSession,
    UnknownLabel,
    UnknownGraph,
    UnknownDictionary,
    UnknownSession,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorCode code);

// All domain failures surface as this exception; the code is stable and is
// what the CLI and the HTTP layer report.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace flowguard
