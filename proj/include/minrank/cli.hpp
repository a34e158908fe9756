#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minrank {

// Dispatches one CLI invocation (argv without the program name) and writes
// the report to out / diagnostics to err.  Exit codes: 0 computed or
// property holds, 1 checked property fails, 2 input or usage error,
// 3 resource cap exceeded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minrank
