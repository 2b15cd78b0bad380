#pragma once

// Graph manifolds made of pieces S × S¹ glued along boundary tori, and
// their refibration by staircase surfaces.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibcomm/reducible.hpp"
#include "fibcomm/surface.hpp"
#include "fibcomm/torus.hpp"

namespace fibcomm {

/// Each boundary torus has the frame (section boundary (1,0), fiber (0,1)).
struct CircleBundlePiece {
  std::string id;
  long genus = 0;                  // genus of the base surface
  std::vector<std::string> tori;   // one per base boundary circle

  Surface base() const { return {genus, static_cast<long>(tori.size())}; }
};

struct TorusRef {
  std::string piece;
  std::string torus;
};

/// `matrix` maps coordinates on torus a to coordinates on torus b.
struct Gluing {
  std::string id;
  TorusRef a;
  TorusRef b;
  Matrix2 matrix;
};

struct FiberedGraphManifold {
  std::vector<CircleBundlePiece> pieces;
  std::vector<Gluing> gluings;

  const CircleBundlePiece& piece(const std::string& id) const;
};

struct Arc {
  std::string tail;
  std::string head;
};

struct PiecePlan {
  long floors = 1;
  std::vector<Arc> arcs;
  /// Staircase along a nonseparating closed curve instead of arcs.
  bool circle = false;
};

/// Pieces absent from the plan are kept with one floor and no arcs.
struct RefiberPlan {
  std::map<std::string, PiecePlan> pieces;

  PiecePlan for_piece(const std::string& id) const;
};

enum class BoundaryRole { Horizontal, Tail, Head };

struct StaircaseBoundary {
  std::string torus;
  BoundaryRole role = BoundaryRole::Horizontal;
  long copies = 1;                   // preimage circles on this torus
  std::array<Integer, 2> slope{1, 0};
  Rational rotation;                 // turns per application of the return map
};

struct StaircasePieceResult {
  /// One surface if connected; `floors` copies of the base otherwise.
  std::vector<Surface> components;
  std::vector<StaircaseBoundary> boundaries;

  bool connected() const { return components.size() == 1; }
  long euler_characteristic() const;
};

/// The degree-n cyclic cover of S cut out by the arcs (or the circle).
/// Throws std::invalid_argument on reused or degenerate arcs.
StaircasePieceResult staircase_piece(const CircleBundlePiece& piece, const PiecePlan& plan);
/// Surface-only form for a base surface with k arcs.
Surface staircase_surface(const Surface& base, long arcs, long floors);

struct PlanIssue {
  std::string id;
  std::string message;
  bool error = true;  // false: accepted but outside the calibrated junction types
};

std::vector<PlanIssue> validate_plan(const FiberedGraphManifold& m, const RefiberPlan& plan);

struct Refibration {
  ReducibleMap map;
  long monodromy_order = 1;
  bool fiber_connected = true;
  Surface fiber;                            // valid when connected
  std::vector<Surface> fiber_components;    // one entry per component
  std::vector<std::string> uncalibrated;    // gluing ids
};

/// Throws std::invalid_argument listing the plan errors, if any.
Refibration refiber(const FiberedGraphManifold& m, const RefiberPlan& plan);

/// Base surface (g, b) of a piece whose k-arc staircase with n floors has
/// the given genus and boundary count; nullopt if no integral solution.
std::optional<Surface> solve_piece_topology(long genus, long boundary, long floors, long arcs);

}  // namespace fibcomm
