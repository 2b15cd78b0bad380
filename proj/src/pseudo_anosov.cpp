#include "fibcomm/pseudo_anosov.hpp"

#include <cmath>
#include <stdexcept>

namespace fibcomm {

std::string to_string(const SingularityVector& v) {
  std::string out = "{";
  for (const auto& [p, n] : v) {
    if (out.size() > 1) out += ", ";
    out += "delta_" + std::to_string(p) + ": " + n.get_str();
  }
  return out + "}";
}

BranchedSurface delta_from_branch_data(const BranchData& b) {
  if (b.degree < 1) throw std::invalid_argument("cover degree must be positive");
  long ramification = 0;
  SingularityVector delta;
  for (std::size_t i = 0; i < b.branch_points.size(); ++i) {
    long sum = 0;
    for (long m : b.branch_points[i]) {
      if (m < 1) throw std::invalid_argument("branch point " + std::to_string(i) + ": local degrees must be positive");
      sum += m;
      ramification += m - 1;
      if (m >= 2) delta[2 * m] += 1;
    }
    if (sum != b.degree) {
      throw std::invalid_argument("branch point " + std::to_string(i) + ": local degrees sum to " +
                                  std::to_string(sum) + ", not " + std::to_string(b.degree));
    }
  }
  if (ramification % 2 != 0) {
    throw std::invalid_argument("total ramification " + std::to_string(ramification) + " is odd; no such cover");
  }
  BranchedSurface r;
  r.surface = {1 + ramification / 2, 0};
  r.delta = std::move(delta);
  return r;
}

Integer euler_poincare_sum(const SingularityVector& v) {
  Integer s = 0;
  for (const auto& [p, n] : v) s += (2 - p) * n;
  return s;
}

PaVerdict pa_obstruction(const DilatationLabel& l1, const SingularityVector& d1, const DilatationLabel& l2,
                         const SingularityVector& d2) {
  PaVerdict v;
  std::optional<Rational> s;
  try {
    s = label_log_ratio(l1, l2);
  } catch (const std::invalid_argument& e) {
    v.witness = e.what();
    return v;
  }
  if (!s) {
    v.witness = "log " + to_string(l1) + " is not a rational multiple of log " + to_string(l2);
    return v;
  }
  std::optional<Rational> sp;
  for (const auto& [p, n] : d1) {
    auto it = d2.find(p);
    if (it == d2.end()) {
      v.witness = "delta_" + std::to_string(p) + " is " + n.get_str() + " vs 0";
      return v;
    }
    Rational r(n, it->second);
    if (!sp) {
      sp = r;
    } else if (*sp != r) {
      v.witness = "delta_" + std::to_string(p) + " ratio " + r.str() + " differs from " + sp->str();
      return v;
    }
  }
  for (const auto& [p, n] : d2) {
    if (!d1.count(p)) {
      v.witness = "delta_" + std::to_string(p) + " is 0 vs " + n.get_str();
      return v;
    }
  }
  v.pass = true;
  v.s = *s;
  v.s_prime = sp.value_or(Rational(1));
  return v;
}

const char* to_string(Pairing p) {
  switch (p) {
    case Pairing::OP: return "O-P";
    case Pairing::OO: return "O-O";
    case Pairing::PP: return "P-P";
  }
  return "?";
}

double SpectrumValue::to_double() const { return coefficient.to_double() * std::sqrt(d.get_d()); }

std::string SpectrumValue::str() const { return coefficient.str() + "*sqrt(" + d.get_str() + ")"; }

namespace {

struct EigenData {
  QuadraticNumber mu;  // expanding eigenvalue with its sign
  Rational scale;      // ℓ = |N(α)|·scale·√D
};

EigenData eigen_data(const SpectrumQuery& q) {
  NTClass cls = classify_torus(q.matrix);
  if (cls.kind != NTKind::Anosov) throw std::invalid_argument("spectrum needs an Anosov matrix, got " + q.matrix.str());
  const QuadraticUnit& lambda = *cls.dilatation;
  QuadraticNumber mu = q.matrix.trace() < 0 ? -lambda.value() : lambda.value();
  Rational factor = 1;
  if (q.branch) {
    BranchedSurface bs = delta_from_branch_data(*q.branch);
    factor = Rational(-euler_characteristic(bs.surface)) / Rational(q.branch->degree);
  }
  // Coordinates (r_u·v, r_s·v) span area |c|·|μ − μ'| = 2|c·b_μ|·√D.
  Rational area = Rational(2) * Rational(Integer(abs(q.matrix.c))) * lambda.b();
  return {mu, factor / (area * Rational(lambda.d()))};
}

}  // namespace

Spectrum spectrum_values(const SpectrumQuery& q) {
  if (q.radius < 1) throw std::invalid_argument("spectrum radius must be at least 1");
  const EigenData e = eigen_data(q);
  const Integer& D = e.mu.d();
  // Left eigenvector r_u = (c, μ − a); the stable coordinate is its conjugate.
  const QuadraticNumber ru1(D, Rational(q.matrix.c), 0);
  const QuadraticNumber ru2 = e.mu - QuadraticNumber(D, Rational(q.matrix.a), 0);

  std::map<Rational, SpectrumValue> found;
  auto visit = [&](Pairing pairing, const Rational& x, const Rational& y) {
    if (x.is_zero() && y.is_zero()) return;
    QuadraticNumber alpha = ru1 * QuadraticNumber(D, x, 0) + ru2 * QuadraticNumber(D, y, 0);
    Rational coeff = alpha.norm().abs() * e.scale;
    if (found.count(coeff)) return;
    found.emplace(coeff, SpectrumValue{coeff, D, pairing, {x, y}});
  };
  const Rational dx = q.P[0] - q.O[0];
  const Rational dy = q.P[1] - q.O[1];
  for (long i = -q.radius; i <= q.radius; ++i) {
    for (long j = -q.radius; j <= q.radius; ++j) visit(Pairing::OP, dx + Rational(i), dy + Rational(j));
  }
  for (Pairing p : {Pairing::OO, Pairing::PP}) {
    for (long i = -q.radius; i <= q.radius; ++i) {
      for (long j = -q.radius; j <= q.radius; ++j) visit(p, Rational(i), Rational(j));
    }
  }
  Spectrum s;
  s.radius = q.radius;
  for (auto& kv : found) s.values.push_back(std::move(kv.second));
  return s;
}

std::optional<SpectrumValue> spectrum_min(const SpectrumQuery& q) {
  Spectrum s = spectrum_values(q);
  if (s.values.empty()) return std::nullopt;
  return s.values.front();
}

}  // namespace fibcomm
