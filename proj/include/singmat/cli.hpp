#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singmat {

// Runs one CLI invocation (without the program name). Exit codes:
// 0 success, 1 violation found, 2 usage/input error, 3 cap/budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singmat
