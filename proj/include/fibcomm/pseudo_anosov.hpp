#pragma once

// Singularity data and spectra for pseudo-Anosov maps obtained as lifts of
// linear Anosov maps through branched covers of the torus.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibcomm/arith.hpp"
#include "fibcomm/reducible.hpp"
#include "fibcomm/surface.hpp"
#include "fibcomm/torus.hpp"

namespace fibcomm {

/// prong count -> number of singularities (regular points excluded)
using SingularityVector = std::map<long, Integer>;

std::string to_string(const SingularityVector& v);

struct BranchData {
  long degree = 1;
  /// For each branch point, the local degrees of its preimages.
  std::vector<std::vector<long>> branch_points;
  std::optional<Matrix2> matrix;  // the base Anosov map, informational here
};

struct BranchedSurface {
  Surface surface;
  SingularityVector delta;
};

/// Riemann–Hurwitz genus, and a 2m-prong singularity for each preimage of
/// local degree m ≥ 2. Throws on partitions not summing to the degree or an
/// odd total ramification.
BranchedSurface delta_from_branch_data(const BranchData& b);

/// Σ (2 − p)·δ_p.
Integer euler_poincare_sum(const SingularityVector& v);

struct PaVerdict {
  bool pass = false;
  Rational s;        // log λ1 = s·log λ2
  Rational s_prime;  // Δ1 = s'·Δ2
  std::string witness;
};

PaVerdict pa_obstruction(const DilatationLabel& l1, const SingularityVector& d1, const DilatationLabel& l2,
                         const SingularityVector& d2);

struct SpectrumQuery {
  Matrix2 matrix;
  std::array<Rational, 2> O{0, 0};
  std::array<Rational, 2> P{0, 0};
  long radius = 1;
  std::optional<BranchData> branch;  // scales by −χ(F)/d when present
};

enum class Pairing { OP, OO, PP };

const char* to_string(Pairing p);

struct SpectrumValue {
  /// ℓ = coefficient·√d
  Rational coefficient;
  Integer d;
  /// Witness class: the straight segment from its start point by `translate`.
  Pairing pairing = Pairing::OP;
  std::array<Rational, 2> translate;

  double to_double() const;
  std::string str() const;
};

struct Spectrum {
  std::vector<SpectrumValue> values;  // ascending, deduplicated
  bool certified_subset = true;       // classes winding around marked points are not enumerated
  long radius = 0;
};

/// Products of the stable and unstable coordinates of the segments from O
/// to P + (i, j) and the loops at O and at P over (i, j) ≠ 0, for
/// max(|i|, |j|) ≤ R, normalized so the torus has product measure 1.
Spectrum spectrum_values(const SpectrumQuery& q);

/// The smallest enumerated value: an upper bound for the spectral minimum.
std::optional<SpectrumValue> spectrum_min(const SpectrumQuery& q);

}  // namespace fibcomm
