#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fogalloc::cli {

/// Runs the command line `args` (without the program name). Returns 0 on
/// success, 2 on usage or configuration errors, 1 on internal failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fogalloc::cli
