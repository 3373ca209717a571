#pragma once

#include <ostream>

namespace blox::cli {

// Exit codes: 0 solvable/PASS, 1 unsolvable/FAIL, 2 usage or parse error,
// 3 state budget exceeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blox::cli
