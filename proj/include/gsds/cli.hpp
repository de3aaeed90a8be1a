#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsds::cli {

enum ExitCode : int {
    ok = 0,
    failure = 1,
    invalid_model = 2,
    contradictory_data = 3,
    incompatible = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gsds::cli
