#pragma once

#include <string>
#include <vector>

namespace granular {

/// Whole command-line surface as a library call so tests can drive it
/// in-process. argv excludes the program name. Exit codes: 0 success,
/// 1 usage error, 2 data/parameter error.
int run_cli(const std::vector<std::string>& argv);

}  // namespace granular
