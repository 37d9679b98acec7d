#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wmsb {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,        // success, member, suite passed
    kExitNegative = 1,  // non-member, suite failed
    kExitUsage = 2,     // bad arguments or invalid tree
};

/// Runs the tool on `args` (args[0] is the program name) and returns the
/// process exit code. Subcommands: generate, member, locate, describe, verify.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wmsb
