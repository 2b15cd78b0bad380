#include "fibcomm/surface.hpp"

#include <stdexcept>

namespace fibcomm {

long euler_characteristic(const Surface& s) { return 2 - 2 * s.genus - s.boundary; }

bool surfaces_commensurable(const Surface& a, const Surface& b) {
  for (const Surface* s : {&a, &b}) {
    if (euler_characteristic(*s) >= 0) {
      throw std::invalid_argument(to_string(*s) + " has non-negative Euler characteristic");
    }
  }
  return (a.boundary == 0) == (b.boundary == 0);
}

std::string to_string(const Surface& s) {
  return "S_{" + std::to_string(s.genus) + "," + std::to_string(s.boundary) + "}";
}

}  // namespace fibcomm
