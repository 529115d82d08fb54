#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tiling::cli {

/// Process exit codes.
enum ExitCode : int {
    success = 0,
    check_failure = 1,
    input_error = 2,
    resource_cap = 3,
};

int run(int argc, char ** argv, std::ostream & out, std::ostream & err);

/// args excludes the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace tiling::cli
