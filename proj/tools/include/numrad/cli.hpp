#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace numrad::cli {

/// Exit codes are limited to these three values.
enum ExitCode : int { kOk = 0, kViolated = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Library version reported in JSON output.
const char* version();

}  // namespace numrad::cli
