#pragma once

#include <string>
#include <vector>

namespace c2f::cli {

/// Runs one CLI invocation (args exclude the program name). Returns the
/// process exit code: 0 on success, 1 on any error.
int run(const std::vector<std::string>& args);

}  // namespace c2f::cli
