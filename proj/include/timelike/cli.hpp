#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace timelike {

/// Exit statuses of the command-line tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitDomain = 1,       // library errors on valid input (not in future, ...)
  kExitUsage = 2,        // bad flags, unreadable or invalid scene files
  kExitSuiteFailed = 3,  // a property suite reported a violation
};

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics and wall times to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace timelike
