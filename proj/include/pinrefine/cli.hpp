#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinrefine {

// Entry point of the pinrefine command. argv[0] is expected first.
// Returns 0 on success, 1 on usage or validation errors, 2 on stage failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinrefine
