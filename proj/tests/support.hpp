#pragma once

// Builders for the standard example graphs and manifolds, random generators
// for the property suites, and brute-force oracles that share no code with
// the library beyond GMP integers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fibcomm/covering.hpp"
#include "fibcomm/pseudo_anosov.hpp"
#include "fibcomm/reducible.hpp"
#include "fibcomm/staircase.hpp"
#include "fibcomm/torus.hpp"

namespace support {

using namespace fibcomm;

inline Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

inline PairInvariant pair(const Rational& p, const Rational& r) { return {p, r}; }

// ---------------------------------------------------------------------------
// Example graphs

/// D_{n,k}: a central torus with n holes, each capped by a genus-k surface
/// with one hole, all junction twists +1.
inline ReducibleMap d_type(long n, long k) {
  ReducibleMap m;
  Piece centre{"C", {1, n}, {}, 0, PieceKind::Periodic, std::nullopt};
  Orbit caps;
  for (long i = 0; i < n; ++i) {
    const std::string s = std::to_string(i);
    centre.slots.push_back("s" + s);
    m.pieces.push_back({"L" + s, {k, 1}, {"s"}, 0, PieceKind::Periodic, std::nullopt});
    m.curves.push_back({"c" + s, {"C", "s" + s}, {"L" + s, "s"}, q(1)});
    caps.pieces.push_back("L" + s);
    caps.curves.push_back("c" + s);
  }
  m.pieces.insert(m.pieces.begin(), centre);
  m.orbits.push_back(caps);
  return m;
}

/// One pseudo-Anosov piece of genus one with its two boundary circles glued
/// by a curve of twist k − r.
inline ReducibleMap twisted_loop(long k, const Rational& r) {
  ReducibleMap m;
  m.pieces.push_back({"S", {1, 2}, {"c+", "c-"}, 0, PieceKind::PseudoAnosov, SymbolLabel{"K", 1, r}});
  m.curves.push_back({"c", {"S", "c+"}, {"S", "c-"}, q(k) - r});
  return m;
}

// ---------------------------------------------------------------------------
// Manifolds

inline Matrix2 mat(long a, long b, long c, long d) { return {a, b, c, d}; }

/// Three circle-bundle pieces over S_{1,1}, S_{1,3}, S_{1,2} in a chain.
inline FiberedGraphManifold bounded_chain() {
  FiberedGraphManifold m;
  m.pieces = {{"S1", 1, {"f"}}, {"S2", 1, {"x", "f", "g"}}, {"S3", 1, {"g", "y"}}};
  m.gluings = {{"f", {"S1", "f"}, {"S2", "f"}, mat(-1, -1, 0, 1)},
               {"g", {"S2", "g"}, {"S3", "g"}, mat(-1, -1, 0, 1)}};
  return m;
}

inline RefiberPlan bounded_plan(long n) {
  RefiberPlan p;
  p.pieces["S1"] = {n, {}, false};
  p.pieces["S2"] = {n, {{"x", "g"}}, false};
  p.pieces["S3"] = {n + 1, {{"g", "y"}}, false};
  return p;
}

inline RefiberPlan circle_plan(long n) {
  RefiberPlan p;
  p.pieces["S1"] = {n, {}, true};
  p.pieces["S2"] = {n, {}, false};
  p.pieces["S3"] = {n, {}, false};
  return p;
}

/// Closed graph manifold over S_{3,2}, S_{1,4}, S_{1,2}.
inline FiberedGraphManifold closed_chain() {
  FiberedGraphManifold m;
  m.pieces = {{"S1", 3, {"f1", "f2"}}, {"S2", 1, {"f1", "f2", "g1", "g2"}}, {"S3", 1, {"g1", "g2"}}};
  m.gluings = {{"f1", {"S1", "f1"}, {"S2", "f1"}, mat(-1, 2, 0, 1)},
               {"f2", {"S1", "f2"}, {"S2", "f2"}, mat(-1, -2, 0, 1)},
               {"g1", {"S2", "g1"}, {"S3", "g1"}, mat(-1, -1, 0, 1)},
               {"g2", {"S2", "g2"}, {"S3", "g2"}, mat(-1, 1, 0, 1)}};
  return m;
}

inline RefiberPlan closed_plan(long n) {
  RefiberPlan p;
  p.pieces["S1"] = {n + 2, {{"f2", "f1"}}, false};
  p.pieces["S2"] = {n, {{"f1", "f2"}, {"g2", "g1"}}, false};
  p.pieces["S3"] = {n + 1, {{"g1", "g2"}}, false};
  return p;
}

inline RefiberPlan closed_psi_plan() {
  RefiberPlan p;
  p.pieces["S1"] = {3, {}, false};
  p.pieces["S2"] = {3, {{"g2", "g1"}}, false};
  p.pieces["S3"] = {4, {{"g1", "g2"}}, false};
  return p;
}

// ---------------------------------------------------------------------------
// Random decomposition graphs

struct GraphOptions {
  int max_pieces = 5;
  int max_extra_curves = 4;
  long max_num = 12;
  long max_den = 12;
  bool allow_pseudo_anosov = true;
  bool integer_twists = false;
};

inline Rational random_twist(std::mt19937_64& rng, const GraphOptions& o) {
  std::uniform_int_distribution<long> num(1, o.max_num), den(1, o.max_den), sign(0, 1);
  Rational t = o.integer_twists ? q(num(rng)) : q(num(rng), den(rng));
  return sign(rng) ? -t : t;
}

/// A connected graph: a random spanning tree plus extra curves, self-loops
/// allowed. Genus and free boundary are random subject to χ < 0.
inline ReducibleMap random_graph(std::mt19937_64& rng, const GraphOptions& o = {}) {
  std::uniform_int_distribution<int> npieces(1, o.max_pieces), extra(0, o.max_extra_curves);
  const int n = npieces(rng);
  std::vector<std::vector<std::string>> slots(n);
  ReducibleMap m;
  auto add_curve = [&](int a, int b) {
    const std::string id = "c" + std::to_string(m.curves.size());
    slots[a].push_back(id + "a");
    slots[b].push_back(id + "b");
    m.curves.push_back({id, {"P" + std::to_string(a), id + "a"}, {"P" + std::to_string(b), id + "b"},
                        random_twist(rng, o)});
  };
  for (int i = 1; i < n; ++i) add_curve(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
  int e = extra(rng) + (n == 1 ? 1 : 0);
  for (int i = 0; i < e; ++i) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    add_curve(pick(rng), pick(rng));
  }
  for (int i = 0; i < n; ++i) {
    const long s = static_cast<long>(slots[i].size());
    long f = std::uniform_int_distribution<long>(0, 2)(rng);
    long g = std::uniform_int_distribution<long>(0, 2)(rng);
    while (2 - 2 * g - s - f >= 0) ++g;
    Piece p{"P" + std::to_string(i), {g, s + f}, slots[i], f, PieceKind::Periodic, std::nullopt};
    if (o.allow_pseudo_anosov && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      p.kind = PieceKind::PseudoAnosov;
      p.dilatation = SymbolLabel{"L" + std::to_string(i), 1, std::nullopt};
    }
    m.pieces.push_back(std::move(p));
  }
  return m;
}

/// A random connected cover of total degree l over every piece. Components
/// are intervals of sheets; each lift is an interval inside one component
/// on each side. Returns nullopt when the lifted pieces admit no surface.
inline std::optional<CoveringData> random_cover(std::mt19937_64& rng, const ReducibleMap& m, long l) {
  auto random_cuts = [&](long total) {
    std::vector<long> cuts{0, total};
    for (long x = 1; x < total; ++x) {
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
  };
  CoveringData c;
  std::map<std::string, std::vector<long>> piece_cuts;
  for (const auto& p : m.pieces) {
    auto cuts = random_cuts(l);
    piece_cuts[p.id] = cuts;
    auto& comps = c.components[p.id];
    for (std::size_t i = 1; i < cuts.size(); ++i) comps.push_back(cuts[i] - cuts[i - 1]);
  }
  auto component_at = [](const std::vector<long>& cuts, long x) {
    return static_cast<long>(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin()) - 1;
  };
  for (const auto& curve : m.curves) {
    const auto& ca = piece_cuts[curve.a.piece];
    const auto& cb = piece_cuts[curve.b.piece];
    std::vector<long> cuts = random_cuts(l);
    cuts.insert(cuts.end(), ca.begin(), ca.end());
    cuts.insert(cuts.end(), cb.begin(), cb.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto& lifts = c.curves[curve.id];
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      lifts.push_back({cuts[i] - cuts[i - 1], component_at(ca, cuts[i - 1]), component_at(cb, cuts[i - 1])});
    }
  }
  try {
    lift_cover(m, c);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Oracles

/// Smallest unit > 1 of the maximal order of Q(√d) by direct search on
/// x² − d·y² = ±1 (or ±4 when d ≡ 1 mod 4, giving (x + y√d)/2).
struct PellUnit {
  std::int64_t x, y;
  bool halves;
  int norm;
};

inline std::optional<PellUnit> pell_oracle(std::int64_t d, std::int64_t y_max) {
  const bool halves = d % 4 == 1;
  const std::int64_t target = halves ? 4 : 1;
  for (std::int64_t y = 1; y <= y_max; ++y) {
    const __int128 dy2 = static_cast<__int128>(d) * y * y;
    for (int sign : {-1, 1}) {
      const __int128 x2 = dy2 + sign * target;
      if (x2 <= 0) continue;
      auto x = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x2)));
      while (static_cast<__int128>(x) * x > x2) --x;
      while (static_cast<__int128>(x + 1) * (x + 1) <= x2) ++x;
      if (static_cast<__int128>(x) * x == x2) return PellUnit{x, y, halves, sign};
    }
  }
  return std::nullopt;
}

/// Element (x + y√n)/2^e of Z[√n] with n > 0 not a square, unreduced.
struct RawSurd {
  Integer x, y, n;
  unsigned long e;
};

inline RawSurd surd_mul(const RawSurd& a, const RawSurd& b) {
  return {a.x * b.x + a.n * a.y * b.y, a.x * b.y + a.y * b.x, a.n, a.e + b.e};
}

inline RawSurd surd_pow(const RawSurd& a, unsigned long k) {
  RawSurd r{1, 0, a.n, 0};
  for (unsigned long i = 0; i < k; ++i) r = surd_mul(r, a);
  return r;
}

/// (x1 + y1√n1)/2^e1 = (x2 + y2√n2)/2^e2 for y1, y2 > 0: the rational parts
/// agree and y1²·n1 and y2²·n2 agree after clearing the powers of two.
inline bool surd_equal(const RawSurd& a, const RawSurd& b) {
  Integer sa = Integer(1) << b.e;
  Integer sb = Integer(1) << a.e;
  if (a.x * sa != b.x * sb) return false;
  return a.y * a.y * a.n * sa * sa == b.y * b.y * b.n * sb * sb;
}

/// The larger eigenvalue of an Anosov matrix as (|t| + √(t² − 4·det))/2.
inline RawSurd raw_dilatation(long t, long det) { return {std::abs(t), 1, t * t - 4 * det, 1}; }

/// Smallest p/q (p, q ≤ bound) with u^q = v^p, i.e. log u / log v = p/q.
inline std::optional<Rational> power_oracle(const RawSurd& u, const RawSurd& v, unsigned long bound) {
  std::vector<RawSurd> up(bound + 1), vp(bound + 1);
  for (unsigned long k = 1; k <= bound; ++k) {
    up[k] = surd_pow(u, k);
    vp[k] = surd_pow(v, k);
  }
  for (unsigned long qq = 1; qq <= bound; ++qq) {
    for (unsigned long p = 1; p <= bound; ++p) {
      if (std::gcd(p, qq) == 1 && surd_equal(up[qq], vp[p])) return q(static_cast<long>(p), static_cast<long>(qq));
    }
  }
  return std::nullopt;
}

/// ℓ(v) = |c·v1² + (d − a)·v1·v2 − b·v2²| / √(t² − 4·det), returned as the
/// numerator; the minimum over the same translates as the library uses.
struct OracleSpectrumMin {
  Rational numerator;  // ℓ = numerator / √disc
  Integer disc;
};

inline OracleSpectrumMin spectrum_oracle_min(const Matrix2& A, const std::array<Rational, 2>& O,
                                             const std::array<Rational, 2>& P, long R) {
  const Integer disc = A.trace() * A.trace() - 4 * A.det();
  std::optional<Rational> best;
  auto consider = [&](const Rational& x, const Rational& y) {
    if (x.is_zero() && y.is_zero()) return;
    Rational val = (Rational(A.c) * x * x + Rational(Integer(A.d - A.a)) * x * y - Rational(A.b) * y * y).abs();
    if (!best || val < *best) best = val;
  };
  for (long i = -R; i <= R; ++i) {
    for (long j = -R; j <= R; ++j) {
      consider(P[0] - O[0] + q(i), P[1] - O[1] + q(j));
      consider(q(i), q(j));
    }
  }
  return {*best, disc};
}

/// Genus and boundary count of the n-sheeted cyclic cover of S_{g,b} built
/// from a one-vertex ribbon graph: handles a_i, b_i in commutator order and
/// b − 1 loops d_j bounding monogons. Voltages: `loop_voltage[j]` on d_j,
/// `handle_voltage` on a_1. Boundary circles are the orbits of the lifted
/// face permutation.
struct CoverCount {
  long components;
  long genus;  // of each component (all isomorphic)
  long boundary;
};

inline CoverCount ribbon_cover(long g, long b, long n, const std::vector<long>& loop_voltage, long handle_voltage) {
  // half-edge 2e is the outgoing end of edge e, 2e + 1 the incoming end
  const long edges = 2 * g + (b - 1);
  std::vector<long> rotation;
  for (long i = 0; i < g; ++i) {
    long a = 2 * i, bb = 2 * i + 1;
    rotation.insert(rotation.end(), {2 * a, 2 * bb, 2 * a + 1, 2 * bb + 1});
  }
  for (long j = 0; j < b - 1; ++j) {
    long e = 2 * g + j;
    rotation.insert(rotation.end(), {2 * e, 2 * e + 1});
  }
  const long H = 2 * edges;
  std::vector<long> sigma(H), volt(H, 0);
  for (std::size_t i = 0; i < rotation.size(); ++i) sigma[rotation[i]] = rotation[(i + 1) % rotation.size()];
  std::vector<long> edge_voltage(edges, 0);
  if (g > 0) edge_voltage[0] = handle_voltage;
  for (long j = 0; j < b - 1; ++j) edge_voltage[2 * g + j] = loop_voltage[j];
  for (long e = 0; e < edges; ++e) {
    volt[2 * e] = ((edge_voltage[e] % n) + n) % n;
    volt[2 * e + 1] = (n - volt[2 * e]) % n;
  }
  auto lifted_face = [&](long state) {
    long h = state / n, i = state % n;
    long h2 = h ^ 1;
    long i2 = (i + volt[h]) % n;
    return sigma[h2] * n + i2;
  };
  std::vector<char> seen(H * n, 0);
  long faces = 0;
  for (long s = 0; s < H * n; ++s) {
    if (seen[s]) continue;
    ++faces;
    for (long t = s; !seen[t]; t = lifted_face(t)) seen[t] = 1;
  }
  // Lifted vertices are the sheets; edges join sheet i to i + voltage.
  std::vector<long> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (long e = 0; e < edges; ++e) {
    for (long i = 0; i < n; ++i) parent[find(i)] = find((i + volt[2 * e]) % n);
  }
  long comps = 0;
  for (long i = 0; i < n; ++i) comps += find(i) == i;
  const long chi = n * (1 - edges);
  const long per_chi = chi / comps, per_faces = faces / comps;
  return {comps, (2 - per_chi - per_faces) / 2, faces};
}

}  // namespace support
