#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accinfo {

/// Exit statuses of the command-line tool.
enum ExitStatus : int {
    kExitOk = 0,
    kExitFailure = 1,  ///< computation did not complete (e.g. solver ran out of iterations)
    kExitInput = 2,    ///< malformed input or domain error
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out`, a single-line diagnostic to `err` on failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accinfo
