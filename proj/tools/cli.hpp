#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfp::cli {

// Runs one CLI invocation. args is argv-style including the program name.
// Returns the process exit code: 0 success, 2 precondition violation,
// 3 search exhausted.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace qfp::cli
