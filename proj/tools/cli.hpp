#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expramsey::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kLimit = 2,
    kCheckFailed = 3,
};

/// Runs the tool on argv[1..] and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace expramsey::cli
