#include "fibcomm/reducible.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fibcomm {

std::string to_string(const DilatationLabel& l) {
  if (const auto* u = std::get_if<QuadraticUnit>(&l)) return u->str();
  const auto& s = std::get<SymbolLabel>(l);
  std::string out = s.name;
  if (s.exponent != 1) out += "^" + s.exponent.str();
  return out;
}

const Piece& ReducibleMap::piece(const std::string& id) const {
  for (const auto& p : pieces) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("no piece '" + id + "'");
}

const ReducingCurve& ReducibleMap::curve(const std::string& id) const {
  for (const auto& c : curves) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("no curve '" + id + "'");
}

long ReducibleMap::euler_characteristic() const {
  long chi = 0;
  for (const auto& p : pieces) chi += fibcomm::euler_characteristic(p.surface);
  return chi;
}

std::vector<Issue> validate(const ReducibleMap& m) {
  std::vector<Issue> issues;
  std::map<std::string, const Piece*> pieces;
  // (piece, slot) -> number of curve ends using it
  std::map<std::pair<std::string, std::string>, int> slot_use;

  for (const auto& p : m.pieces) {
    if (!pieces.emplace(p.id, &p).second) issues.push_back({p.id, "duplicate piece id"});
    if (euler_characteristic(p.surface) >= 0) {
      issues.push_back({p.id, to_string(p.surface) + " has non-negative Euler characteristic"});
    }
    if (p.free_boundary < 0 || p.surface.genus < 0) issues.push_back({p.id, "negative count"});
    if (p.surface.boundary != static_cast<long>(p.slots.size()) + p.free_boundary) {
      issues.push_back({p.id, "boundary count " + std::to_string(p.surface.boundary) + " != " +
                                  std::to_string(p.slots.size()) + " slots + " +
                                  std::to_string(p.free_boundary) + " free"});
    }
    for (const auto& s : p.slots) {
      if (!slot_use.emplace(std::make_pair(p.id, s), 0).second) {
        issues.push_back({p.id, "duplicate slot '" + s + "'"});
      }
    }
    if (p.kind == PieceKind::Periodic && p.dilatation) {
      issues.push_back({p.id, "periodic piece carries a dilatation"});
    }
  }

  if (m.curves.empty()) issues.push_back({"", "reducing system is empty"});
  std::set<std::string> curve_ids;
  for (const auto& c : m.curves) {
    if (!curve_ids.insert(c.id).second) issues.push_back({c.id, "duplicate curve id"});
    if (c.twist.is_zero()) issues.push_back({c.id, "zero twist"});
    for (const CurveEnd* e : {&c.a, &c.b}) {
      auto it = slot_use.find({e->piece, e->slot});
      if (it == slot_use.end()) {
        issues.push_back({c.id, "end references missing slot '" + e->piece + ":" + e->slot + "'"});
      } else {
        ++it->second;
      }
    }
  }
  for (const auto& [key, uses] : slot_use) {
    if (uses != 1) {
      issues.push_back({key.first, "slot '" + key.second + "' used by " + std::to_string(uses) +
                                       " curve ends"});
    }
  }

  std::set<std::string> seen_pieces, seen_curves;
  for (std::size_t i = 0; i < m.orbits.size(); ++i) {
    const Orbit& o = m.orbits[i];
    const std::string oid = "orbit " + std::to_string(i);
    const Piece* first_piece = nullptr;
    for (const auto& pid : o.pieces) {
      auto it = pieces.find(pid);
      if (it == pieces.end()) {
        issues.push_back({pid, oid + " references missing piece"});
        continue;
      }
      if (!seen_pieces.insert(pid).second) issues.push_back({pid, "piece in more than one orbit"});
      if (!first_piece) {
        first_piece = it->second;
      } else if (!(it->second->surface == first_piece->surface) || it->second->kind != first_piece->kind) {
        issues.push_back({pid, oid + " mixes pieces of different type"});
      }
    }
    const ReducingCurve* first_curve = nullptr;
    for (const auto& cid : o.curves) {
      auto it = std::find_if(m.curves.begin(), m.curves.end(), [&](const auto& c) { return c.id == cid; });
      if (it == m.curves.end()) {
        issues.push_back({cid, oid + " references missing curve"});
        continue;
      }
      if (!seen_curves.insert(cid).second) issues.push_back({cid, "curve in more than one orbit"});
      if (!first_curve) {
        first_curve = &*it;
      } else if (it->twist.abs() != first_curve->twist.abs()) {
        issues.push_back({cid, oid + " mixes curves of different twist"});
      }
    }
  }
  return issues;
}

void require_valid(const ReducibleMap& m) {
  auto issues = validate(m);
  if (issues.empty()) return;
  std::string msg = "invalid decomposition graph:";
  for (const auto& i : issues) msg += "\n  " + (i.id.empty() ? std::string("<graph>") : i.id) + ": " + i.message;
  throw std::invalid_argument(msg);
}

std::string to_string(const PairInvariant& x) { return "(" + x.p.str() + "," + x.q.str() + ")"; }

PairSet flipped(const PairSet& s) {
  PairSet out;
  for (const auto& x : s) out.insert(x.flipped());
  return out;
}

PairSet scaled(const PairSet& s, const Rational& k) {
  PairSet out;
  for (const auto& x : s) out.insert(x.scaled(k));
  return out;
}

namespace {

void add_reciprocal(PairInvariant& acc, const Rational& twist) {
  if (twist.sign() > 0) {
    acc.p += twist.reciprocal();
  } else if (twist.sign() < 0) {
    acc.q += twist.abs().reciprocal();
  }
}

std::string to_string(const PairSet& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? ", " : "") + to_string(x);
  return out + "}";
}

}  // namespace

PairInvariant A_piece(const ReducibleMap& m, const std::string& piece_id) {
  m.piece(piece_id);
  PairInvariant acc;
  for (const auto& c : m.curves) {
    if (c.a.piece == piece_id) add_reciprocal(acc, c.twist);
    if (c.b.piece == piece_id) add_reciprocal(acc, c.twist);
  }
  return acc;
}

PairInvariant A_total(const ReducibleMap& m) {
  PairInvariant acc;
  for (const auto& p : m.pieces) {
    PairInvariant a = A_piece(m, p.id);
    acc.p += a.p;
    acc.q += a.q;
  }
  return acc.scaled(Rational(Integer(1), Integer(2)));
}

PairInvariant A_total_direct(const ReducibleMap& m) {
  std::map<Rational, long> a_k;
  for (const auto& c : m.curves) ++a_k[c.twist];
  PairInvariant acc;
  for (const auto& [k, count] : a_k) {
    if (k.sign() > 0) acc.p += Rational(count) / k;
    if (k.sign() < 0) acc.q += Rational(count) / (-k);
  }
  return acc;
}

PairSet Pi(const ReducibleMap& m) {
  PairSet out;
  for (const auto& p : m.pieces) {
    out.insert(A_piece(m, p.id).scaled(Rational(-euler_characteristic(p.surface)).reciprocal()));
  }
  return out;
}

PairInvariant PolynomialPair::at_one() const {
  PairInvariant acc;
  for (const auto& [key, coeff] : coefficients) {
    acc.p += key.p * coeff;
    acc.q += key.q * coeff;
  }
  return acc;
}

Rational PolynomialPair::coefficient_sum() const {
  Rational s;
  for (const auto& kv : coefficients) s += kv.second;
  return s;
}

PolynomialPair P_polynomial(const ReducibleMap& m) {
  PolynomialPair out;
  const Rational chi_f(m.euler_characteristic());
  for (const auto& p : m.pieces) {
    const long chi = euler_characteristic(p.surface);
    PairInvariant key = A_piece(m, p.id).scaled(Rational(-chi).reciprocal());
    out.coefficients[key] += Rational(chi) / chi_f;
  }
  return out;
}

ReducibleMap power(const ReducibleMap& m, unsigned long k) {
  if (k == 0) throw std::invalid_argument("power must be positive");
  ReducibleMap out = m;
  for (auto& c : out.curves) c.twist *= Rational(static_cast<long>(k));
  for (auto& p : out.pieces) {
    if (!p.dilatation) continue;
    if (auto* u = std::get_if<QuadraticUnit>(&*p.dilatation)) {
      *p.dilatation = u->pow(k);
    } else {
      std::get<SymbolLabel>(*p.dilatation).exponent *= Rational(static_cast<long>(k));
    }
  }
  return out;
}

ReducibleMap reverse_orientation(const ReducibleMap& m) {
  ReducibleMap out = m;
  for (auto& c : out.curves) c.twist = -c.twist;
  return out;
}

PairInvariant InvariantBundle::normalized_A() const { return A.scaled(Rational(-chi).reciprocal()); }

InvariantBundle invariants(const ReducibleMap& m) {
  require_valid(m);
  InvariantBundle b;
  b.A = A_total(m);
  b.Pi = Pi(m);
  b.chi = m.euler_characteristic();
  b.P = P_polynomial(m);
  for (const auto& p : m.pieces) {
    if (p.kind != PieceKind::PseudoAnosov || !p.dilatation) continue;
    if (std::find(b.dilatations.begin(), b.dilatations.end(), *p.dilatation) == b.dilatations.end()) {
      b.dilatations.push_back(*p.dilatation);
    }
  }
  return b;
}

namespace {

// Scale s with x = s·y, read off the first coordinate where either is
// nonzero; nullopt if the supports differ.
std::optional<Rational> ratio(const PairInvariant& x, const PairInvariant& y) {
  if (x.p.is_zero() != y.p.is_zero() || x.q.is_zero() != y.q.is_zero()) return std::nullopt;
  if (!x.p.is_zero()) return x.p / y.p;
  if (!x.q.is_zero()) return x.q / y.q;
  return std::nullopt;
}

std::optional<Rational> set_scale(const PairSet& x, const PairSet& y) {
  if (x.size() != y.size() || x.empty()) return std::nullopt;
  // Positive scaling preserves lexicographic order, so maxima correspond.
  auto s = ratio(*x.rbegin(), *y.rbegin());
  if (!s || s->sign() <= 0) return std::nullopt;
  if (scaled(y, *s) != x) return std::nullopt;
  return s;
}

void insert_unique(std::vector<ScaleMatch>& v, ScaleMatch m) {
  if (std::find(v.begin(), v.end(), m) == v.end()) v.push_back(std::move(m));
}

void sort_matches(std::vector<ScaleMatch>& v) {
  std::sort(v.begin(), v.end(), [](const ScaleMatch& a, const ScaleMatch& b) {
    return a.s != b.s ? a.s < b.s : a.flipped < b.flipped;
  });
}

}  // namespace

std::vector<ScaleMatch> match_flip_scale(const InvariantBundle& x, const InvariantBundle& y) {
  std::vector<ScaleMatch> out;
  const PairInvariant ax = x.normalized_A();
  for (bool flip : {false, true}) {
    const PairInvariant ay = flip ? y.normalized_A().flipped() : y.normalized_A();
    const PairSet py = flip ? flipped(y.Pi) : y.Pi;
    std::optional<Rational> s = ratio(ax, ay);
    if (!s) s = set_scale(x.Pi, py);
    if (!s || s->sign() <= 0) continue;
    if (ay.scaled(*s) != ax) continue;
    if (scaled(py, *s) != x.Pi) continue;
    insert_unique(out, {*s, flip});
  }
  sort_matches(out);
  return out;
}

const char* to_string(CompareMode mode) {
  switch (mode) {
    case CompareMode::Full: return "full";
    case CompareMode::Topological: return "topological";
    case CompareMode::Combined: return "combined";
  }
  return "?";
}

CompareMode parse_compare_mode(const std::string& s) {
  if (s == "full") return CompareMode::Full;
  if (s == "topological") return CompareMode::Topological;
  if (s == "combined") return CompareMode::Combined;
  throw std::invalid_argument("unknown compare mode '" + s + "'");
}

std::optional<Rational> label_log_ratio(const DilatationLabel& x, const DilatationLabel& y) {
  const auto* ux = std::get_if<QuadraticUnit>(&x);
  const auto* uy = std::get_if<QuadraticUnit>(&y);
  if (ux && uy) return unit_log_ratio(*ux, *uy);
  if (!ux && !uy) {
    const auto& sx = std::get<SymbolLabel>(x);
    const auto& sy = std::get<SymbolLabel>(y);
    if (sx.name != sy.name) return std::nullopt;
    return sx.exponent / sy.exponent;
  }
  throw std::invalid_argument("cannot relate exact dilatation " + to_string(ux ? x : y) +
                              " to symbolic dilatation " + to_string(ux ? y : x));
}

namespace {

std::string labels_str(const std::vector<DilatationLabel>& v) {
  std::string out = "{";
  for (const auto& l : v) out += (out.size() > 1 ? ", " : "") + to_string(l);
  return out + "}";
}

// Every x relates to some y with ratio s, and every y to some x.
bool labels_scale(const std::vector<DilatationLabel>& xs, const std::vector<DilatationLabel>& ys,
                  const Rational& s) {
  auto covered = [&](const std::vector<DilatationLabel>& from, const std::vector<DilatationLabel>& to,
                     const Rational& r) {
    for (const auto& f : from) {
      bool hit = false;
      for (const auto& t : to) {
        auto q = label_log_ratio(f, t);
        if (q && *q == r) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };
  return covered(xs, ys, s) && covered(ys, xs, s.reciprocal());
}

std::string describe(const InvariantBundle& b) {
  return "A/-chi=" + to_string(b.normalized_A()) + " Pi=" + to_string(b.Pi);
}

}  // namespace

Verdict compare(const InvariantBundle& x, const InvariantBundle& y, CompareMode mode) {
  Verdict v;
  switch (mode) {
    case CompareMode::Full: {
      v.feasible = match_flip_scale(x, y);
      if (v.feasible.empty()) {
        v.incommensurable = true;
        v.witness = "no common scale and flip: phi1 " + describe(x) + "; phi2 " + describe(y);
      }
      return v;
    }
    case CompareMode::Topological: {
      for (const auto& m : match_flip_scale(x, y)) {
        if (m.s == 1) v.feasible.push_back(m);
      }
      if (v.feasible.empty()) {
        v.incommensurable = true;
        v.witness = "invariants differ up to flip: phi1 " + describe(x) + "; phi2 " + describe(y);
      }
      return v;
    }
    case CompareMode::Combined: break;
  }

  const auto& lx = x.dilatations;
  const auto& ly = y.dilatations;
  if (lx.empty() != ly.empty()) {
    v.incommensurable = true;
    v.witness = "dilatation sets " + labels_str(lx) + " and " + labels_str(ly) + " are not both empty";
    return v;
  }
  std::vector<Rational> candidates;
  if (!lx.empty()) {
    for (const auto& l : ly) {
      auto s = label_log_ratio(lx.front(), l);
      if (s && labels_scale(lx, ly, *s) &&
          std::find(candidates.begin(), candidates.end(), *s) == candidates.end()) {
        candidates.push_back(*s);
      }
    }
    if (candidates.empty()) {
      v.incommensurable = true;
      v.witness = "log dilatations " + labels_str(lx) + " and " + labels_str(ly) +
                  " are not rational multiples";
      return v;
    }
  }
  for (bool flip : {false, true}) {
    const PairSet py = flip ? flipped(y.Pi) : y.Pi;
    auto s_pi = set_scale(x.Pi, py);
    if (!s_pi) continue;
    Rational s = s_pi->reciprocal();
    if (!lx.empty() && std::find(candidates.begin(), candidates.end(), s) == candidates.end()) continue;
    insert_unique(v.feasible, {s, flip});
  }
  sort_matches(v.feasible);
  if (v.feasible.empty()) {
    v.incommensurable = true;
    std::string svals;
    for (const auto& c : candidates) svals += (svals.empty() ? "" : ", ") + c.str();
    v.witness = "Pi(phi1)=" + to_string(x.Pi) + " is not s^-1 Pi(phi2)=" + to_string(y.Pi) +
                (candidates.empty() ? std::string(" for any s") : " for s in {" + svals + "}");
  }
  return v;
}

Verdict compare(const ReducibleMap& m1, const ReducibleMap& m2, CompareMode mode) {
  InvariantBundle x = invariants(m1);
  InvariantBundle y = invariants(m2);
  if (mode == CompareMode::Combined) {
    for (const ReducibleMap* m : {&m1, &m2}) {
      for (const auto& p : m->pieces) {
        if (p.kind == PieceKind::PseudoAnosov && !p.dilatation) {
          throw std::invalid_argument("combined mode needs a dilatation label on piece '" + p.id + "'");
        }
      }
    }
  }
  return compare(x, y, mode);
}

}  // namespace fibcomm
