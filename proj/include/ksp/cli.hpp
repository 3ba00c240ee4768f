#pragma once

#include <iosfwd>

namespace ksp::cli {

// Exit codes: 0 success, 1 invalid arguments (including bad files),
// 2 resource-limit, 3 experiment assertion failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ksp::cli
