#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpm::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kNoMatch = 3,
};

/// Runs the command line `args` (without the program name). JSON results go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpm::cli
