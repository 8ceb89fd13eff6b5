#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcx {

// Exit codes: 0 success, 1 verification false, 2 input error, 3 not found
// within budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gcx
