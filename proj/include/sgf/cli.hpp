#pragma once

#include <ostream>

namespace sgf {

/// Exit codes: 0 success, 1 runtime error, 2 usage or validation error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sgf
