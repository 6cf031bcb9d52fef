#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tempvote {

// Full command-line surface. Returns the process exit code: 0 on success,
// 1 on parse/validation errors, 2 when an enumeration budget is exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempvote
