#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace netcomp {

// Exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,         // counterexample or failed verification
  kExitInputError = 2,     // bad flags, unreadable or malformed inputs
  kExitBudgetExceeded = 3,
  kExitInternalError = 4,
};

// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netcomp
