#pragma once

// Decomposition graphs of reducible surface automorphisms and the twist
// invariants A(φ,S), A(φ), Π(φ), P(φ) built from them.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fibcomm/arith.hpp"
#include "fibcomm/surface.hpp"

namespace fibcomm {

/// A dilatation known only by name. Equal names mean equal dilatations;
/// `exponent` tracks powers taken since the name was assigned.
struct SymbolLabel {
  std::string name;
  Rational exponent = 1;
  std::optional<Rational> rotation;

  bool operator==(const SymbolLabel&) const = default;
};

using DilatationLabel = std::variant<QuadraticUnit, SymbolLabel>;

std::string to_string(const DilatationLabel& l);

enum class PieceKind { Periodic, PseudoAnosov };

struct Piece {
  std::string id;
  Surface surface;
  std::vector<std::string> slots;  // boundary circles glued to reducing curves
  long free_boundary = 0;          // boundary circles on ∂F
  PieceKind kind = PieceKind::Periodic;
  std::optional<DilatationLabel> dilatation;
};

struct CurveEnd {
  std::string piece;
  std::string slot;
};

struct ReducingCurve {
  std::string id;
  CurveEnd a;
  CurveEnd b;
  Rational twist;
};

struct Orbit {
  std::vector<std::string> pieces;
  std::vector<std::string> curves;
};

struct ReducibleMap {
  std::vector<Piece> pieces;
  std::vector<ReducingCurve> curves;
  std::vector<Orbit> orbits;  // optional metadata

  const Piece& piece(const std::string& id) const;
  const ReducingCurve& curve(const std::string& id) const;
  /// χ of the whole surface F.
  long euler_characteristic() const;
};

struct Issue {
  std::string id;
  std::string message;
};

std::vector<Issue> validate(const ReducibleMap& m);
/// Throws std::invalid_argument listing every issue, if any.
void require_valid(const ReducibleMap& m);

/// (p, q) with p the positive-twist part and q the negative-twist part.
struct PairInvariant {
  Rational p;
  Rational q;

  PairInvariant flipped() const { return {q, p}; }
  PairInvariant scaled(const Rational& s) const { return {p * s, q * s}; }
  auto operator<=>(const PairInvariant&) const = default;
  bool operator==(const PairInvariant&) const = default;
};

std::string to_string(const PairInvariant& x);

using PairSet = std::set<PairInvariant>;

PairSet flipped(const PairSet& s);
PairSet scaled(const PairSet& s, const Rational& k);

PairInvariant A_piece(const ReducibleMap& m, const std::string& piece_id);
/// ½ Σ_S A(φ,S).
PairInvariant A_total(const ReducibleMap& m);
/// Σ_k a_k/|k| split by sign, with a_k the number of curves of twist k.
PairInvariant A_total_direct(const ReducibleMap& m);
PairSet Pi(const ReducibleMap& m);

/// Coefficients λ_(p,q) = Σ χ(S)/χ(F) over pieces with normalized pair (p,q).
struct PolynomialPair {
  std::map<PairInvariant, Rational> coefficients;

  /// P(1,1) = Σ λ_(p,q)·(p,q).
  PairInvariant at_one() const;
  Rational coefficient_sum() const;
};

PolynomialPair P_polynomial(const ReducibleMap& m);

/// Twists multiplied by k; Exact labels raised to k, Symbol exponents times k.
ReducibleMap power(const ReducibleMap& m, unsigned long k);
/// The same map seen on the oppositely oriented surface: every twist negated.
ReducibleMap reverse_orientation(const ReducibleMap& m);

struct InvariantBundle {
  PairInvariant A;
  PairSet Pi;
  long chi = 0;
  std::vector<DilatationLabel> dilatations;  // deduplicated, in piece order
  PolynomialPair P;

  /// A/(−χ(F)).
  PairInvariant normalized_A() const;
};

InvariantBundle invariants(const ReducibleMap& m);

struct ScaleMatch {
  Rational s;
  bool flipped = false;

  bool operator==(const ScaleMatch&) const = default;
};

/// All (s, flip) with Â(X) = s·flip(Â(Y)) and Π(X) = s·flip(Π(Y)), where
/// Â = A/(−χ(F)). One flip applies to both invariants of Y.
std::vector<ScaleMatch> match_flip_scale(const InvariantBundle& x, const InvariantBundle& y);

enum class CompareMode { Full, Topological, Combined };

const char* to_string(CompareMode mode);
CompareMode parse_compare_mode(const std::string& s);

struct Verdict {
  bool incommensurable = false;
  std::string witness;              // set when incommensurable
  std::vector<ScaleMatch> feasible;  // set otherwise
};

/// Full: one scale and flip relate Â and Π. Topological: the same with
/// s = 1. Combined: log λ(φ1) = s·log λ(φ2) and Π(φ1) = s⁻¹·flip(Π(φ2)).
/// Incommensurable is definitive; NotObstructed only means no obstruction
/// was found. Combined throws if a pseudo-Anosov piece lacks a label or
/// if an exact dilatation must be related to a symbolic one.
Verdict compare(const ReducibleMap& m1, const ReducibleMap& m2, CompareMode mode);
Verdict compare(const InvariantBundle& x, const InvariantBundle& y, CompareMode mode);

/// log(x)/log(y) for two labels, nullopt when unrelated.
std::optional<Rational> label_log_ratio(const DilatationLabel& x, const DilatationLabel& y);

}  // namespace fibcomm
