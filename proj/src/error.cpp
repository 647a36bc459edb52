#include "flowguard/error.hpp"

namespace flowguard {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::EmptyToken: return "EmptyToken";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::MalformedGraphFile: return "MalformedGraphFile";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::SequenceTooShort: return "SequenceTooShort";
    case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::MissingReferenceTime: return "MissingReferenceTime";
    case ErrorCode::SourceExhausted: return "SourceExhausted";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::MalformedPrediction: return "MalformedPrediction";
    case ErrorCode::MalformedSession: return "MalformedSession";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownGraph: return "UnknownGraph";
    case ErrorCode::UnknownDictionary: return "UnknownDictionary";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

} // namespace flowguard
