#include "fibcomm/covering.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>

namespace fibcomm {

namespace {

const std::vector<long>& components_of(const CoveringData& c, const std::string& piece) {
  auto it = c.components.find(piece);
  if (it == c.components.end()) throw std::invalid_argument("covering data has no components for piece '" + piece + "'");
  return it->second;
}

const std::vector<CurveLift>& lifts_of(const CoveringData& c, const std::string& curve) {
  auto it = c.curves.find(curve);
  if (it == c.curves.end()) throw std::invalid_argument("covering data has no lifts for curve '" + curve + "'");
  return it->second;
}

// Largest b in [lo, hi] with 2 − χ − slots − b even and ≥ 0.
std::optional<long> free_boundary_choice(long chi, long slots, long lo, long hi) {
  for (long b = hi; b >= lo; --b) {
    long twice_genus = 2 - chi - slots - b;
    if (twice_genus >= 0 && twice_genus % 2 == 0) return b;
  }
  return std::nullopt;
}

std::string lifted_piece_id(const std::string& piece, long j) { return piece + "." + std::to_string(j); }

}  // namespace

std::vector<Issue> validate_cover(const ReducibleMap& m, const CoveringData& c) {
  std::vector<Issue> issues;
  for (const auto& p : m.pieces) {
    auto it = c.components.find(p.id);
    if (it == c.components.end() || it->second.empty()) {
      issues.push_back({p.id, "no preimage components"});
      continue;
    }
    for (long d : it->second) {
      if (d < 1) issues.push_back({p.id, "component degree must be positive"});
    }
  }
  for (const auto& curve : m.curves) {
    auto it = c.curves.find(curve.id);
    if (it == c.curves.end() || it->second.empty()) {
      issues.push_back({curve.id, "no preimage curves"});
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      const std::string& piece = side == 0 ? curve.a.piece : curve.b.piece;
      auto comps = c.components.find(piece);
      if (comps == c.components.end()) continue;
      std::vector<long> sums(comps->second.size(), 0);
      for (const auto& lift : it->second) {
        long j = side == 0 ? lift.component_a : lift.component_b;
        if (lift.degree < 1) {
          issues.push_back({curve.id, "local degree must be positive"});
        } else if (j < 0 || j >= static_cast<long>(sums.size())) {
          issues.push_back({curve.id, "lift meets missing component " + std::to_string(j) + " of " + piece});
        } else {
          sums[j] += lift.degree;
        }
      }
      for (std::size_t j = 0; j < sums.size(); ++j) {
        if (sums[j] != comps->second[j]) {
          issues.push_back({lifted_piece_id(piece, static_cast<long>(j)),
                            "local degrees of " + curve.id + " sum to " + std::to_string(sums[j]) +
                                ", component degree is " + std::to_string(comps->second[j])});
        }
      }
    }
  }
  return issues;
}

LiftResult lift_cover(const ReducibleMap& m, const CoveringData& c, bool strict) {
  if (strict) {
    auto issues = validate_cover(m, c);
    if (!issues.empty()) {
      std::string msg = "inadmissible covering data:";
      for (const auto& i : issues) msg += "\n  " + i.id + ": " + i.message;
      throw std::invalid_argument(msg);
    }
  }
  LiftResult out;
  for (const auto& p : m.pieces) {
    const auto& comps = components_of(c, p.id);
    for (long j = 0; j < static_cast<long>(comps.size()); ++j) {
      const long l = comps[j];
      Piece q;
      q.id = lifted_piece_id(p.id, j);
      q.kind = p.kind;
      q.dilatation = p.dilatation;
      for (const auto& slot : p.slots) {
        for (const auto& curve : m.curves) {
          bool on_a = curve.a.piece == p.id && curve.a.slot == slot;
          bool on_b = curve.b.piece == p.id && curve.b.slot == slot;
          if (!on_a && !on_b) continue;
          const auto& lifts = lifts_of(c, curve.id);
          for (std::size_t i = 0; i < lifts.size(); ++i) {
            if ((on_a ? lifts[i].component_a : lifts[i].component_b) == j) {
              q.slots.push_back(slot + "." + std::to_string(i));
            }
          }
        }
      }
      const long chi = l * euler_characteristic(p.surface);
      const long slots = static_cast<long>(q.slots.size());
      auto b = free_boundary_choice(chi, slots, p.free_boundary, p.free_boundary * l);
      if (!b) {
        throw std::invalid_argument("inadmissible cover of " + p.id + ": no surface with chi " +
                                    std::to_string(chi) + " and " + std::to_string(slots) + " glued boundary circles");
      }
      q.free_boundary = *b;
      q.surface = {(2 - chi - slots - *b) / 2, slots + *b};
      if (p.free_boundary * l > p.free_boundary) {
        out.notes.push_back(q.id + ": free boundary lifts to " + std::to_string(*b) + " circles (genus " +
                            std::to_string(q.surface.genus) + ")");
      }
      out.map.pieces.push_back(std::move(q));
    }
  }
  for (const auto& curve : m.curves) {
    const auto& lifts = lifts_of(c, curve.id);
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      const std::string suffix = "." + std::to_string(i);
      ReducingCurve r;
      r.id = curve.id + suffix;
      r.a = {lifted_piece_id(curve.a.piece, lifts[i].component_a), curve.a.slot + suffix};
      r.b = {lifted_piece_id(curve.b.piece, lifts[i].component_b), curve.b.slot + suffix};
      r.twist = curve.twist / Rational(lifts[i].degree);
      out.map.curves.push_back(std::move(r));
    }
  }
  return out;
}

bool LawReport::ok() const {
  if (!cover_issues.empty()) return false;
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

LawReport verify_cover_laws(const ReducibleMap& m, const CoveringData& c, const std::vector<unsigned long>& powers) {
  LawReport report;
  report.cover_issues = validate_cover(m, c);
  ReducibleMap lifted;
  try {
    lifted = lift_cover(m, c, false).map;
  } catch (const std::exception& e) {
    report.cover_issues.push_back({"<cover>", e.what()});
    return report;
  }
  for (const auto& p : m.pieces) {
    const PairInvariant base = A_piece(m, p.id);
    const Rational chi(euler_characteristic(p.surface));
    const auto& comps = components_of(c, p.id);
    for (long j = 0; j < static_cast<long>(comps.size()); ++j) {
      const std::string id = lifted_piece_id(p.id, j);
      for (unsigned long k : powers) {
        PairInvariant lhs = A_piece(power(lifted, k), id);
        PairInvariant rhs = base.scaled(Rational(comps[j]) / Rational(static_cast<long>(k)));
        report.checks.push_back({id, "power-cover k=" + std::to_string(k), to_string(lhs), to_string(rhs), lhs == rhs});
      }
      PairInvariant lhs = base.scaled((-chi).reciprocal());
      PairInvariant rhs =
          A_piece(lifted, id).scaled(Rational(-euler_characteristic(lifted.piece(id).surface)).reciprocal());
      report.checks.push_back({id, "normalized", to_string(lhs), to_string(rhs), lhs == rhs});
    }
  }
  PairInvariant lhs = A_total(lifted).scaled(Rational(lifted.euler_characteristic()).reciprocal());
  PairInvariant rhs = A_total(m).scaled(Rational(m.euler_characteristic()).reciprocal());
  report.checks.push_back({"<global>", "global", to_string(lhs), to_string(rhs), lhs == rhs});
  return report;
}

namespace {

// Smallest multiple of `step` (up to a bound) for which a component of that
// degree over piece p exists with local degree e on each slot.
std::optional<long> component_degree(const Piece& p, const std::vector<long>& slot_degrees) {
  long step = 1;
  for (long e : slot_degrees) step = std::lcm(step, e);
  const long chi = euler_characteristic(p.surface);
  for (long t = 1; t <= 32; ++t) {
    const long l = step * t;
    long slots = 0;
    for (long e : slot_degrees) slots += l / e;
    if (free_boundary_choice(l * chi, slots, p.free_boundary, p.free_boundary * l)) return l;
  }
  return std::nullopt;
}

}  // namespace

NormalizeResult normalize_unit_twists(const ReducibleMap& m) {
  require_valid(m);
  for (const auto& p : m.pieces) {
    if (p.kind != PieceKind::Periodic) {
      throw std::invalid_argument("normalize_unit_twists needs periodic pieces; '" + p.id + "' is pseudo-Anosov");
    }
  }
  Integer den = 1;
  for (const auto& c : m.curves) den = lcm(den, c.twist.den());
  if (!den.fits_ulong_p()) throw std::overflow_error("twist denominators too large");
  unsigned long k = den.get_ui();

  for (int attempt = 0; attempt < 8; ++attempt, k *= 2) {
    ReducibleMap powered = power(m, k);
    std::map<std::string, long> e;
    bool all_unit = true;
    for (const auto& c : powered.curves) {
      Integer v = c.twist.abs().num();
      if (!v.fits_slong_p()) throw std::overflow_error("twist too large");
      e[c.id] = v.get_si();
      all_unit = all_unit && e[c.id] == 1;
    }
    if (all_unit) {
      NormalizeResult r{powered, {k, 1, {}}};
      for (const auto& p : m.pieces) r.certificate.cover.components[p.id] = {1};
      for (const auto& c : m.curves) r.certificate.cover.curves[c.id] = {{1, 0, 0}};
      return r;
    }

    std::map<std::string, long> local;  // piece -> component degree
    bool ok = true;
    for (const auto& p : m.pieces) {
      std::vector<long> degrees;
      for (const auto& c : m.curves) {
        if (c.a.piece == p.id) degrees.push_back(e[c.id]);
        if (c.b.piece == p.id) degrees.push_back(e[c.id]);
      }
      auto l = component_degree(p, degrees);
      if (!l) {
        ok = false;
        break;
      }
      local[p.id] = *l;
    }
    if (!ok) continue;

    long total = 1;
    for (const auto& [id, l] : local) total = std::lcm(total, l);
    CoveringData cover;
    for (const auto& p : m.pieces) cover.components[p.id] = std::vector<long>(total / local[p.id], local[p.id]);
    for (const auto& c : m.curves) {
      const long d = e[c.id];
      const long per_a = local[c.a.piece] / d;
      const long per_b = local[c.b.piece] / d;
      auto& lifts = cover.curves[c.id];
      for (long i = 0; i < total / d; ++i) lifts.push_back({d, i / per_a, i / per_b});
    }
    NormalizeResult r{lift_cover(powered, cover).map, {k, total, cover}};
    return r;
  }
  throw std::runtime_error("normalize_unit_twists found no admissible cover");
}

}  // namespace fibcomm
