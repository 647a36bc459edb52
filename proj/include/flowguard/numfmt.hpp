#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace flowguard {

// Rounds to `digits` significant decimal digits (locale independent). JSON
// writers store rounded values so the emitted text is the shortest form of a
// value with at most that many digits.
double round_sig(double value, int digits);

// Strict locale-independent decimal parse of the whole of `text`.
std::optional<double> parse_decimal(std::string_view text);

inline constexpr int kGraphDigits = 12;
inline constexpr int kReportDigits = 9;

} // namespace flowguard
