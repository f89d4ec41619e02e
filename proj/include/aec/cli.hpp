// cli.hpp -- in-process entry point for the aec command-line tool, so tests
// can drive it with captured streams.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aec {

// args excludes the program name.  Returns the process exit code: 0 success,
// 1 validation/verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace aec
