#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace animacy::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on a runtime error and 2 on a usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace animacy::cli
