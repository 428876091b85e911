#pragma once

#include <string>
#include <vector>

namespace systolekit::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 1 domain error (a
/// machine-readable error object is printed), 2 malformed input.
int run(const std::vector<std::string>& args);

} // namespace systolekit::cli
