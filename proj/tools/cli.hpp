#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hasse::cli {

enum ExitCode : int { pass = 0, assertion_failed = 1, undecided = 2, usage = 3 };

/// Runs one invocation; argv[0] is the program name.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace hasse::cli
