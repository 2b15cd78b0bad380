#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fibcomm/arith.hpp"

namespace fibcomm {

/// 2×2 integer matrix; columns are the images of (1,0) and (0,1).
struct Matrix2 {
  Integer a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

  Integer det() const { return a * d - b * c; }
  Integer trace() const { return a + d; }
  Matrix2 operator*(const Matrix2& o) const;
  bool operator==(const Matrix2& o) const;
  /// Inverse over the integers; throws unless det = ±1.
  Matrix2 inverse() const;
  Matrix2 pow(unsigned long k) const;
  std::array<Integer, 2> apply(const std::array<Integer, 2>& v) const;
  std::string str() const;

  static Matrix2 identity() { return {}; }
};

enum class NTKind { Periodic, Reducible, Anosov };

struct NTClass {
  NTKind kind;
  long period = 0;                        // Periodic only
  std::optional<QuadraticUnit> dilatation;  // Anosov only
};

const char* to_string(NTKind k);

/// Throws std::invalid_argument unless |det| = 1.
NTClass classify_torus(const Matrix2& m);

enum class TorusVerdictKind { Commensurable, Incommensurable, SameClassTrivial };

struct TorusVerdict {
  TorusVerdictKind kind;
  std::optional<Rational> s;  // Commensurable only: log λ1 = s·log λ2
};

TorusVerdict torus_commensurable(const Matrix2& m1, const Matrix2& m2);

/// Both periodic and generating the same finite cyclic subgroup of GL(2,Z).
bool same_cyclic_group(const Matrix2& m1, const Matrix2& m2);

/// Periodic: the order-4 and order-6 rotations. Reducible: the two
/// parabolic classes. Anosov has no finite list and throws.
std::vector<Matrix2> minimal_representatives(NTKind kind);

}  // namespace fibcomm
