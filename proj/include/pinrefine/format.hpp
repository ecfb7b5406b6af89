#pragma once

#include <string>

namespace pinrefine {

// Six significant digits, the fixed precision of every report value.
std::string sig6(double value);

}  // namespace pinrefine
