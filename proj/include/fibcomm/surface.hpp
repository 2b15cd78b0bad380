#pragma once

#include <string>

namespace fibcomm {

/// Compact orientable surface of genus g with n boundary circles.
struct Surface {
  long genus = 0;
  long boundary = 0;

  bool operator==(const Surface&) const = default;
};

long euler_characteristic(const Surface& s);

/// Two surfaces with negative Euler characteristic are commensurable iff
/// both or neither have boundary. Throws std::invalid_argument if χ ≥ 0.
bool surfaces_commensurable(const Surface& a, const Surface& b);

/// "S_{g,n}".
std::string to_string(const Surface& s);

}  // namespace fibcomm
