#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigcube::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInput = 2,
    kQueryMiss = 3,
    kVerification = 4,
};

/// Runs one subcommand (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sigcube::cli
