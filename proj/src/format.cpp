#include "pinrefine/format.hpp"

#include <fmt/format.h>

namespace pinrefine {

std::string sig6(double value) {
  // Avoid "-0" in reports.
  if (value == 0.0) value = 0.0;
  return fmt::format("{:.6g}", value);
}

}  // namespace pinrefine
