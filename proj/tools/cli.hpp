#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matgeom::cli {

/// Exit codes: 0 every check passed, 1 a check failed (the report carries a
/// counterexample), 2 usage or input-format error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matgeom::cli
