#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qarch::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kPartialFailure = 3,
};

/// Run the CLI on `args` (without the program name), writing to the given
/// streams. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qarch::cli
