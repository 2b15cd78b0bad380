// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace fibcomm;
using support::pair;
using support::q;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (pass) detail << what;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_time(Outcome& o, Clock::time_point t0, double limit) {
  double s = seconds_since(t0);
  if (s >= limit) o.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
  if (o.pass) o.detail << std::fixed << s << " s";
}

// 1. D_{n,k} family.
Outcome d_type_family() {
  Outcome o;
  auto t0 = Clock::now();
  for (long n = 1; n <= 6; ++n) {
    for (long k = 1; k <= 6; ++k) {
      if (Pi(support::d_type(n, k)) != PairSet{pair(q(1), q(0)), pair(q(1, 2 * k - 1), q(0))}) {
        o.fail("Pi(D_" + std::to_string(n) + "," + std::to_string(k) + ")");
      }
    }
  }
  for (long n = 1; n <= 6; ++n) {
    for (long m = 1; m <= 6; ++m) {
      if (compare(support::d_type(n, 2), support::d_type(m, 2), CompareMode::Full).incommensurable) {
        o.fail("D_" + std::to_string(n) + ",2 vs D_" + std::to_string(m) + ",2 obstructed");
      }
      if (!compare(support::d_type(n, 2), support::d_type(m, 3), CompareMode::Full).incommensurable) {
        o.fail("D_" + std::to_string(n) + ",2 vs D_" + std::to_string(m) + ",3 not obstructed");
      }
    }
  }
  check_time(o, t0, 1.0);
  return o;
}

// 2. Bounded chain refibrations.
Outcome bounded_chain() {
  Outcome o;
  auto t0 = Clock::now();
  const auto manifold = support::bounded_chain();
  Refibration two = refiber(manifold, support::bounded_plan(2));
  if (!(two.map.piece("S2'").surface == Surface{2, 4})) o.fail("S2' at n=2");
  if (!(two.map.piece("S3'").surface == Surface{3, 2})) o.fail("S3' at n=2");
  if (two.map.curve("f#0").twist != q(1, 2) || two.map.curve("f#1").twist != q(1, 2)) o.fail("half twists");
  if (two.map.curve("g").twist != q(1, 6)) o.fail("twist 1/6");
  ReducibleMap p6 = power(two.map, 6);
  if (p6.curve("f#0").twist != 3 || p6.curve("g").twist != 1) o.fail("D-power twists (3,1)");
  std::vector<ReducibleMap> maps;
  for (long n = 1; n <= 5; ++n) {
    maps.push_back(refiber(manifold, support::bounded_plan(n)).map);
    if (Pi(maps.back()) != PairSet{pair(q(n), q(0)), pair(q(2 * n + 1, 3), q(0)), pair(q(n, 2), q(0))}) {
      o.fail("Pi(phi_" + std::to_string(n) + ")");
    }
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = 0; j < maps.size(); ++j) {
      if (i != j && !compare(maps[i], maps[j], CompareMode::Full).incommensurable) {
        o.fail("phi_" + std::to_string(i + 1) + " vs phi_" + std::to_string(j + 1) + " not obstructed");
      }
    }
  }
  check_time(o, t0, 1.0);
  return o;
}

// 3. Closed chain refibrations.
Outcome closed_chain() {
  Outcome o;
  const auto manifold = support::closed_chain();
  for (long n = 1; n <= 4; ++n) {
    Refibration r = refiber(manifold, support::closed_plan(n));
    PairSet want{pair(q(n, 12), q(n, 12)), pair(q(3 * n + 4, 8), q(3 * n + 4, 8)), pair(q(n, 2), q(n, 2))};
    if (Pi(r.map) != want) o.fail("Pi(phi_" + std::to_string(n) + ")");
    if (!r.fiber_connected || !(r.fiber == Surface{6 * n + 8, 0})) o.fail("fiber genus at n=" + std::to_string(n));
  }
  Refibration psi = refiber(manifold, support::closed_psi_plan());
  if (Pi(psi.map) != PairSet{pair(q(1, 4), q(1, 4)), pair(q(11, 8), q(11, 8)), pair(q(3, 2), q(3, 2))}) {
    o.fail("Pi(psi)");
  }
  if (!(psi.fiber == Surface{20, 0})) o.fail("psi fiber genus");
  Refibration phi2 = refiber(manifold, support::closed_plan(2));
  if (!compare(phi2.map, psi.map, CompareMode::Full).incommensurable) o.fail("phi_2 vs psi not obstructed");
  if (o.pass) o.detail << "n in [1,4] and psi";
  return o;
}

// 4. Law suites on random graphs.
Outcome law_suites() {
  Outcome o;
  std::mt19937_64 rng(20240521);
  const support::GraphOptions opts{};
  const int graphs = 600;
  int covers = 0;
  for (int t = 0; t < graphs; ++t) {
    ReducibleMap m = support::random_graph(rng, opts);
    const std::string tag = "graph " + std::to_string(t) + ": ";
    // scaling under powers
    for (unsigned long k : {2UL, 3UL, 7UL}) {
      ReducibleMap mk = power(m, k);
      Rational inv(Integer(1), Integer(static_cast<long>(k)));
      if (A_total(mk) != A_total(m).scaled(inv)) o.fail(tag + "A(phi^k)");
      if (Pi(mk) != scaled(Pi(m), inv)) o.fail(tag + "Pi(phi^k)");
    }
    // flip simultaneity
    ReducibleMap rev = reverse_orientation(m);
    if (A_total(rev) != A_total(m).flipped() || Pi(rev) != flipped(Pi(m))) o.fail(tag + "flip");
    auto v = compare(m, rev, CompareMode::Full);
    if (v.incommensurable || std::none_of(v.feasible.begin(), v.feasible.end(),
                                          [](const ScaleMatch& s) { return s.flipped && s.s == 1; })) {
      o.fail(tag + "reversed map not matched by a flip");
    }
    // polynomial identity
    InvariantBundle b = invariants(m);
    if (b.P.at_one() != b.normalized_A().scaled(q(2))) o.fail(tag + "P(1,1)");
    // covering laws
    for (int attempt = 0; attempt < 5; ++attempt) {
      auto cover = support::random_cover(rng, m, 1 + static_cast<long>(rng() % 4));
      if (!cover) continue;
      ++covers;
      if (!verify_cover_laws(m, *cover, {1, 2, 3}).ok()) o.fail(tag + "cover laws");
      break;
    }
  }
  if (covers < 500) o.fail("only " + std::to_string(covers) + " admissible covers");
  if (o.pass) o.detail << graphs << " graphs, " << covers << " covers";
  return o;
}

// 5. Torus commensurability against brute-force unit powers, on every
// ordered pair of Anosov matrices with entries in [-5, 5].
Outcome torus_oracle() {
  Outcome o;
  auto t0 = Clock::now();
  std::vector<Matrix2> all;
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -5; c <= 5; ++c)
        for (long d = -5; d <= 5; ++d) {
          long det = a * d - b * c, t = a + d;
          // t² − 4·det must be positive and not a square
          if ((det == 1 && std::abs(t) > 2) || (det == -1 && t != 0)) all.push_back(support::mat(a, b, c, d));
        }
  // The oracle only sees (trace, det); memoize it on those.
  std::map<std::array<long, 4>, std::optional<Rational>> oracle;
  long pairs = 0;
  for (const Matrix2& m1 : all) {
    const long t1 = m1.trace().get_si(), d1 = m1.det().get_si();
    for (const Matrix2& m2 : all) {
      const long t2 = m2.trace().get_si(), d2 = m2.det().get_si();
      const std::array<long, 4> key{t1, d1, t2, d2};
      auto it = oracle.find(key);
      if (it == oracle.end()) {
        it = oracle.emplace(key, support::power_oracle(support::raw_dilatation(t1, d1),
                                                       support::raw_dilatation(t2, d2), 12)).first;
      }
      TorusVerdict got = torus_commensurable(m1, m2);
      bool agree = it->second ? (got.kind == TorusVerdictKind::Commensurable && got.s == it->second)
                              : got.kind == TorusVerdictKind::Incommensurable;
      if (!agree) o.fail("disagree on " + m1.str() + " vs " + m2.str());
      ++pairs;
    }
  }
  if (o.pass) o.detail << all.size() << " matrices, " << pairs << " pairs, ";
  check_time(o, t0, 30.0);
  return o;
}

// 6. Twisted loop with symbolic dilatation.
Outcome twisted_loop() {
  Outcome o;
  for (long k1 = 1; k1 <= 6; ++k1) {
    for (long k2 = 1; k2 <= 6; ++k2) {
      auto v = compare(support::twisted_loop(k1, q(1, 3)), support::twisted_loop(k2, q(1, 3)), CompareMode::Combined);
      if (v.incommensurable != (k1 != k2)) o.fail("k1=" + std::to_string(k1) + " k2=" + std::to_string(k2));
    }
  }
  if (o.pass) o.detail << "k in [1,6]";
  return o;
}

// 7. Spectrum of the cat map with two marked points.
Outcome spectrum() {
  Outcome o;
  const Matrix2 A = support::mat(2, 1, 1, 1);
  SpectrumQuery q20{A, {0, 0}, {q(1, 2), q(1, 2)}, 20, std::nullopt};
  SpectrumQuery q40 = q20;
  q40.radius = 40;
  Spectrum s20 = spectrum_values(q20);
  Spectrum s40 = spectrum_values(q40);
  auto oracle = support::spectrum_oracle_min(A, q20.O, q20.P, 20);
  const SpectrumValue& m = s20.values.front();
  if (m.coefficient * m.coefficient * Rational(m.d) * Rational(oracle.disc) != oracle.numerator * oracle.numerator) {
    o.fail("minimum " + m.str() + " differs from oracle");
  }
  auto below = [](const Spectrum& s, long bound) {
    long n = 0;
    for (const auto& v : s.values) {
      // coefficient·√d < bound  ⇔  coefficient²·d < bound²
      if (v.coefficient * v.coefficient * Rational(v.d) < Rational(bound * bound)) ++n;
    }
    return n;
  };
  long c20 = below(s20, 5), c40 = below(s40, 5);
  if (c20 != c40) o.fail("counts below 5 differ: " + std::to_string(c20) + " vs " + std::to_string(c40));
  for (const auto* s : {&s20, &s40}) {
    for (const auto& v : s->values) {
      if (v.coefficient.sign() <= 0) o.fail("non-positive value");
    }
  }
  if (o.pass) o.detail << "min " << m.str() << ", " << c20 << " values below 5";
  return o;
}

// 8. Normalization of random D-type graphs.
Outcome normalization() {
  Outcome o;
  std::mt19937_64 rng(8);
  support::GraphOptions opts;
  opts.allow_pseudo_anosov = false;
  opts.integer_twists = true;
  opts.max_num = 6;
  opts.max_pieces = 4;
  opts.max_extra_curves = 2;
  for (int t = 0; t < 100; ++t) {
    ReducibleMap m = support::random_graph(rng, opts);
    const std::string tag = "graph " + std::to_string(t) + ": ";
    NormalizeResult r;
    try {
      r = normalize_unit_twists(m);
    } catch (const std::exception& e) {
      o.fail(tag + e.what());
      continue;
    }
    for (const auto& c : r.map.curves) {
      if (c.twist.abs() != 1) o.fail(tag + "twist " + c.twist.str());
    }
    if (compare(m, r.map, CompareMode::Full).incommensurable) o.fail(tag + "obstructed");
  }
  if (o.pass) o.detail << "100 graphs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 D-type family", d_type_family},        {"2 bounded chain", bounded_chain},
      {"3 closed chain", closed_chain},          {"4 law suites", law_suites},
      {"5 torus oracle", torus_oracle},          {"6 twisted loop", twisted_loop},
      {"7 spectrum", spectrum},                  {"8 normalization", normalization},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail.str() << ")\n";
    failures += !o.pass;
  }
  std::cout << "criterion 9 is documentation only\n";
  return failures == 0 ? 0 : 1;
}
