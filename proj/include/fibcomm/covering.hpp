#pragma once

// Finite covers of decomposition graphs, described combinatorially by
// component degrees and the local degrees of preimage curves.

#include <map>
#include <string>
#include <vector>

#include "fibcomm/reducible.hpp"

namespace fibcomm {

/// One preimage of a reducing curve: it covers the curve with `degree`
/// sheets and meets preimage component `component_a` of the piece on the
/// curve's a side and `component_b` on its b side.
struct CurveLift {
  long degree = 1;
  long component_a = 0;
  long component_b = 0;
};

struct CoveringData {
  /// piece id -> degree of each component of the preimage of that piece
  std::map<std::string, std::vector<long>> components;
  /// curve id -> its preimages
  std::map<std::string, std::vector<CurveLift>> curves;
};

/// Checks that on each side of each curve the local degrees meeting a
/// component sum to that component's degree.
std::vector<Issue> validate_cover(const ReducibleMap& m, const CoveringData& c);

struct LiftResult {
  ReducibleMap map;
  /// one line per lifted piece whose free boundary count was a choice
  std::vector<std::string> notes;
};

/// Lifted piece S.j has χ = l·χ(S) and slots "<slot>.<i>" for the lifts
/// i of the curve at <slot>; lifted curve c.i carries twist I(φ,c)/d_i.
/// Free boundary lifts to the largest count in [f, l·f] admitting an
/// integral genus ≥ 0. With `strict`, degree-sum violations throw; without
/// it they are left for verify_cover_laws to report.
LiftResult lift_cover(const ReducibleMap& m, const CoveringData& c, bool strict = true);

struct LawCheck {
  std::string id;    // lifted piece id, or "<global>"
  std::string law;   // "power-cover", "normalized", "global"
  std::string lhs;
  std::string rhs;
  bool holds = false;
};

struct LawReport {
  std::vector<LawCheck> checks;
  std::vector<Issue> cover_issues;

  bool ok() const;
};

/// For every lifted component S̃ over S with degree l and every k in
/// `powers`: A(φ̃^k, S̃) = (l/k)·A(φ,S), A(φ,S)/−χ(S) = A(φ̃,S̃)/−χ(S̃), and
/// A(φ̃)/χ(F̃) = A(φ)/χ(F).
LawReport verify_cover_laws(const ReducibleMap& m, const CoveringData& c,
                            const std::vector<unsigned long>& powers = {1});

struct NormalizeCertificate {
  unsigned long power = 1;  // φ is first raised to this power
  long degree = 1;          // total degree of the cover over each piece
  CoveringData cover;
};

struct NormalizeResult {
  ReducibleMap map;
  NormalizeCertificate certificate;
};

/// For a map with only periodic pieces, a commensurable map all of whose
/// twists are ±1: a power making every twist an integer, then a cover in
/// which each lift of a curve γ has local degree |I(φ^m, γ)|.
NormalizeResult normalize_unit_twists(const ReducibleMap& m);

}  // namespace fibcomm
