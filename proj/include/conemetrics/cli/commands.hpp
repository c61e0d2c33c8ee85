#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conemetrics::cli {

/// Exit codes: 0 success, 1 assertable violation or failed verification,
/// 2 usage or input error, 3 numerical failure.
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conemetrics::cli
