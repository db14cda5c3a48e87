#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epdisc {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitComputation = 2,
  kExitUsage = 64,
  kExitNoInput = 66,
};

/// Runs `epdisc <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epdisc
