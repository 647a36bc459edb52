#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowguard {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one CLI invocation. `args` excludes the program name. Outputs not
// directed to a file go to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flowguard
