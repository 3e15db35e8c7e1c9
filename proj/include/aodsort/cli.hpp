#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aodsort {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,   // planning failure or validation violations
  kExitUsage = 2,     // I/O, parse or configuration error
};

/// Runs the command-line tool with `args` (program name excluded).
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace aodsort
