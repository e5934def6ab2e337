// Command-line front end: bounds, construct, verify, bench.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klac {

// Exit codes: 0 success, 2 argument/input errors, 3 limit exhaustion,
// 4 verification failure. Machine-readable output goes to `out`,
// diagnostics to `err`. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace klac
