#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coexpr {

/// Runs one subcommand; `args` excludes the program name. Returns 0 on
/// success, 1 for a negative verdict (not equivalent, rejected) and 2 for
/// usage, parse and type errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coexpr
