#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chambers {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDisagreement = 2,
  kExitStatisticalFlag = 3,
  kExitVerificationFailure = 4,
};

// Runs the tool on args (args[0] is the program name). Results go to out
// unless --output names a file; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chambers
