#include "fibcomm/torus.hpp"

#include <sstream>
#include <stdexcept>

namespace fibcomm {

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool Matrix2::operator==(const Matrix2& o) const {
  return a == o.a && b == o.b && c == o.c && d == o.d;
}

Matrix2 Matrix2::inverse() const {
  Integer e = det();
  if (e != 1 && e != -1) throw std::invalid_argument("matrix " + str() + " is not invertible over Z");
  // 1/e = e for e = ±1.
  return {d * e, -b * e, -c * e, a * e};
}

Matrix2 Matrix2::pow(unsigned long k) const {
  Matrix2 r = identity();
  Matrix2 base = *this;
  while (k > 0) {
    if (k & 1UL) r = r * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return r;
}

std::array<Integer, 2> Matrix2::apply(const std::array<Integer, 2>& v) const {
  return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
}

std::string Matrix2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

const char* to_string(NTKind k) {
  switch (k) {
    case NTKind::Periodic: return "periodic";
    case NTKind::Reducible: return "reducible";
    case NTKind::Anosov: return "anosov";
  }
  return "?";
}

namespace {

QuadraticUnit anosov_dilatation(const Integer& t, const Integer& det) {
  // Larger root of x² − |t|x + det.
  Integer disc = t * t - 4 * det;
  Integer d = squarefree_part(disc);
  Integer m = isqrt(disc / d);
  return QuadraticUnit(d, Rational(abs(t), Integer(2)), Rational(m, Integer(2)));
}

}  // namespace

NTClass classify_torus(const Matrix2& m) {
  const Integer det = m.det();
  const Integer t = m.trace();
  if (det == 1) {
    if (m == Matrix2::identity()) return {NTKind::Periodic, 1, std::nullopt};
    if (m == Matrix2{-1, 0, 0, -1}) return {NTKind::Periodic, 2, std::nullopt};
    if (t == 0) return {NTKind::Periodic, 4, std::nullopt};
    if (t == 1) return {NTKind::Periodic, 6, std::nullopt};
    if (t == -1) return {NTKind::Periodic, 3, std::nullopt};
    if (abs(t) == 2) return {NTKind::Reducible, 0, std::nullopt};
    return {NTKind::Anosov, 0, anosov_dilatation(t, det)};
  }
  if (det == -1) {
    if (t == 0) return {NTKind::Periodic, 2, std::nullopt};
    return {NTKind::Anosov, 0, anosov_dilatation(t, det)};
  }
  throw std::invalid_argument("torus automorphism " + m.str() + " has determinant " + det.get_str());
}

TorusVerdict torus_commensurable(const Matrix2& m1, const Matrix2& m2) {
  NTClass c1 = classify_torus(m1);
  NTClass c2 = classify_torus(m2);
  if (c1.kind != c2.kind) return {TorusVerdictKind::Incommensurable, std::nullopt};
  if (c1.kind != NTKind::Anosov) return {TorusVerdictKind::SameClassTrivial, std::nullopt};
  auto s = unit_log_ratio(*c1.dilatation, *c2.dilatation);
  if (!s) return {TorusVerdictKind::Incommensurable, std::nullopt};
  return {TorusVerdictKind::Commensurable, s};
}

bool same_cyclic_group(const Matrix2& m1, const Matrix2& m2) {
  NTClass c1 = classify_torus(m1);
  NTClass c2 = classify_torus(m2);
  if (c1.kind != NTKind::Periodic || c2.kind != NTKind::Periodic) return false;
  if (c1.period != c2.period) return false;
  Matrix2 p = m1;
  for (long j = 1; j <= c1.period; ++j, p = p * m1) {
    if (p == m2) return true;
  }
  return false;
}

std::vector<Matrix2> minimal_representatives(NTKind kind) {
  switch (kind) {
    case NTKind::Periodic: return {Matrix2{0, -1, 1, 0}, Matrix2{0, -1, 1, 1}};
    case NTKind::Reducible: return {Matrix2{1, 1, 0, 1}, Matrix2{-1, 1, 0, -1}};
    case NTKind::Anosov: break;
  }
  throw std::invalid_argument("anosov classes have no finite list of minimal representatives");
}

}  // namespace fibcomm
