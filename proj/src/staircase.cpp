#include "fibcomm/staircase.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fibcomm {

const CircleBundlePiece& FiberedGraphManifold::piece(const std::string& id) const {
  for (const auto& p : pieces) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("no piece '" + id + "'");
}

PiecePlan RefiberPlan::for_piece(const std::string& id) const {
  auto it = pieces.find(id);
  return it == pieces.end() ? PiecePlan{} : it->second;
}

long StaircasePieceResult::euler_characteristic() const {
  long chi = 0;
  for (const auto& s : components) chi += fibcomm::euler_characteristic(s);
  return chi;
}

Surface staircase_surface(const Surface& base, long arcs, long floors) {
  const long k = arcs;
  const long n = floors;
  return {1 - k + n * (k - 1 + base.genus), n * (base.boundary - 2 * k) + 2 * k};
}

StaircasePieceResult staircase_piece(const CircleBundlePiece& piece, const PiecePlan& plan) {
  const long n = plan.floors;
  if (n < 1) throw std::invalid_argument(piece.id + ": floor count must be at least 1");
  if (plan.circle && !plan.arcs.empty()) throw std::invalid_argument(piece.id + ": circle staircase cannot have arcs");
  if (plan.circle && piece.genus < 1) {
    throw std::invalid_argument(piece.id + ": circle staircase needs a nonseparating curve (genus >= 1)");
  }
  std::map<std::string, BoundaryRole> role;
  for (const auto& t : piece.tori) {
    if (!role.emplace(t, BoundaryRole::Horizontal).second) {
      throw std::invalid_argument(piece.id + ": duplicate torus '" + t + "'");
    }
  }
  std::set<std::string> used;
  for (const auto& arc : plan.arcs) {
    if (arc.tail == arc.head) throw std::invalid_argument(piece.id + ": arc endpoints on the same boundary '" + arc.tail + "'");
    for (const auto* t : {&arc.tail, &arc.head}) {
      if (!role.count(*t)) throw std::invalid_argument(piece.id + ": arc references missing torus '" + *t + "'");
      if (!used.insert(*t).second) throw std::invalid_argument(piece.id + ": boundary '" + *t + "' used by two arcs");
    }
    role[arc.tail] = BoundaryRole::Tail;
    role[arc.head] = BoundaryRole::Head;
  }

  StaircasePieceResult r;
  const Surface base = piece.base();
  if (!plan.arcs.empty()) {
    r.components.push_back(staircase_surface(base, static_cast<long>(plan.arcs.size()), n));
  } else if (plan.circle) {
    r.components.push_back({1 + n * (piece.genus - 1), n * base.boundary});
  } else {
    r.components.assign(n, base);
  }
  const Rational rate = Rational(Integer(1), Integer(n));
  for (const auto& t : piece.tori) {
    StaircaseBoundary b;
    b.torus = t;
    b.role = role[t];
    switch (b.role) {
      case BoundaryRole::Horizontal:
        b.copies = n;
        b.slope = {1, 0};
        b.rotation = rate;
        break;
      case BoundaryRole::Tail:
        b.slope = {n, -1};
        b.rotation = -rate;
        break;
      case BoundaryRole::Head:
        b.slope = {n, 1};
        b.rotation = rate;
        break;
    }
    r.boundaries.push_back(std::move(b));
  }
  return r;
}

namespace {

using Vec = std::array<Integer, 2>;

Integer det2(const Vec& u, const Vec& v) { return u[0] * v[1] - u[1] * v[0]; }

std::string vec_str(const Vec& v) { return "(" + v[0].get_str() + "," + v[1].get_str() + ")"; }

struct Side {
  const StaircaseBoundary* boundary = nullptr;
  bool connected = false;  // the piece's staircase is one surface
};

struct Junction {
  Side a, b;
  Rational twist;
};

// Twist of the monodromy on the curve where the new fiber meets a junction
// torus. The fiber meets the torus in N parallel curves of class w (a-frame);
// the two Seifert flows point along v_a = (0,1) and v_b = G⁻¹(0,1). The first
// return of the flow to the fiber, followed around both sides, displaces a
// point of the curve by det(v_a, v_b)/(det(w, v_a)·det(w, v_b)) turns after
// N applications of the monodromy.
Rational junction_twist(const Vec& w, long copies, const Matrix2& g) {
  const Vec va{0, 1};
  const Vec vb = g.inverse().apply({0, 1});
  Rational num(det2(va, vb));
  Rational den(Integer(det2(w, va) * det2(w, vb)));
  return num / den / Rational(copies);
}

// Locates a torus reference; nullptr if absent.
const StaircaseBoundary* find_boundary(const std::map<std::string, StaircasePieceResult>& results,
                                       const TorusRef& ref) {
  auto it = results.find(ref.piece);
  if (it == results.end()) return nullptr;
  for (const auto& b : it->second.boundaries) {
    if (b.torus == ref.torus) return &b;
  }
  return nullptr;
}

struct Analysis {
  std::vector<PlanIssue> issues;
  std::map<std::string, StaircasePieceResult> results;
  std::map<std::string, Junction> junctions;
};

Analysis analyse(const FiberedGraphManifold& m, const RefiberPlan& plan) {
  Analysis an;
  std::set<std::string> ids;
  for (const auto& p : m.pieces) {
    if (!ids.insert(p.id).second) an.issues.push_back({p.id, "duplicate piece id"});
  }
  for (const auto& [id, pp] : plan.pieces) {
    if (!ids.count(id)) an.issues.push_back({id, "plan references missing piece"});
  }
  for (const auto& p : m.pieces) {
    try {
      an.results.emplace(p.id, staircase_piece(p, plan.for_piece(p.id)));
    } catch (const std::invalid_argument& e) {
      an.issues.push_back({p.id, e.what()});
    }
  }

  std::set<std::pair<std::string, std::string>> glued;
  for (const auto& g : m.gluings) {
    bool sides_ok = true;
    for (const TorusRef* ref : {&g.a, &g.b}) {
      bool exists = false;
      if (ids.count(ref->piece)) {
        const auto& tori = m.piece(ref->piece).tori;
        exists = std::find(tori.begin(), tori.end(), ref->torus) != tori.end();
      }
      if (!exists) {
        an.issues.push_back({g.id, "references missing torus '" + ref->piece + ":" + ref->torus + "'"});
        sides_ok = false;
      } else if (!glued.insert({ref->piece, ref->torus}).second) {
        an.issues.push_back({g.id, "torus '" + ref->piece + ":" + ref->torus + "' is in more than one gluing"});
      }
    }
    const Integer det = g.matrix.det();
    if (det != 1 && det != -1) {
      an.issues.push_back({g.id, "gluing matrix " + g.matrix.str() + " has determinant " + det.get_str()});
      continue;
    }
    if (!sides_ok) continue;
    const StaircaseBoundary* ba = find_boundary(an.results, g.a);
    const StaircaseBoundary* bb = find_boundary(an.results, g.b);
    if (!ba || !bb) continue;  // the piece itself was rejected

    const Vec image = g.matrix.apply(ba->slope);
    const Vec target{det * bb->slope[0], det * bb->slope[1]};
    if (image != target) {
      if (image[0] == -target[0] && image[1] == -target[1]) {
        an.issues.push_back({g.id, "co-orientation mismatch: g" + vec_str(ba->slope) + " = " + vec_str(image) +
                                       " but side b expects " + vec_str(target)});
      } else {
        an.issues.push_back({g.id, "slope mismatch: g" + vec_str(ba->slope) + " = " + vec_str(image) +
                                       " is not +-" + vec_str(bb->slope)});
      }
      continue;
    }
    if (ba->copies != bb->copies) {
      an.issues.push_back({g.id, "sheet counts differ: " + std::to_string(ba->copies) + " vs " +
                                     std::to_string(bb->copies)});
      continue;
    }
    if (det == 1) an.issues.push_back({g.id, "orientation-preserving gluing is outside the calibrated junction types", false});
    if ((ba->role == BoundaryRole::Horizontal) != (bb->role == BoundaryRole::Horizontal)) {
      an.issues.push_back({g.id, "horizontal/staircase junction is outside the calibrated junction types", false});
    }
    Junction j;
    j.a = {ba, an.results.at(g.a.piece).connected()};
    j.b = {bb, an.results.at(g.b.piece).connected()};
    j.twist = junction_twist(ba->slope, ba->copies, g.matrix);
    if (j.twist.is_zero()) {
      an.issues.push_back({g.id, "new fibers on both sides agree along the torus; the junction carries no twist"});
      continue;
    }
    an.junctions.emplace(g.id, j);
  }
  return an;
}

std::string primed(const std::string& id) { return id + "'"; }

std::string copy_id(const std::string& id, long j) { return id + "#" + std::to_string(j); }

// Curve end for copy j on one side of a junction.
CurveEnd junction_end(const TorusRef& ref, const Side& side, long j) {
  const long copies = side.boundary->copies;
  if (copies == 1) return {primed(ref.piece), ref.torus};
  if (side.connected) return {primed(ref.piece), copy_id(ref.torus, j)};
  return {copy_id(primed(ref.piece), j), ref.torus};
}

long positive_mod(const Integer& x, long n) {
  Integer r = x % n;
  if (r < 0) r += n;
  return r.get_si();
}

}  // namespace

std::vector<PlanIssue> validate_plan(const FiberedGraphManifold& m, const RefiberPlan& plan) {
  return analyse(m, plan).issues;
}

Refibration refiber(const FiberedGraphManifold& m, const RefiberPlan& plan) {
  Analysis an = analyse(m, plan);
  std::string errors;
  Refibration out;
  for (const auto& i : an.issues) {
    if (i.error) {
      errors += "\n  " + i.id + ": " + i.message;
    } else if (std::find(out.uncalibrated.begin(), out.uncalibrated.end(), i.id) == out.uncalibrated.end()) {
      out.uncalibrated.push_back(i.id);
    }
  }
  if (!errors.empty()) throw std::invalid_argument("refibration plan rejected:" + errors);

  std::set<std::pair<std::string, std::string>> glued;
  for (const auto& g : m.gluings) {
    glued.insert({g.a.piece, g.a.torus});
    glued.insert({g.b.piece, g.b.torus});
  }

  ReducibleMap& map = out.map;
  for (const auto& p : m.pieces) {
    const auto& r = an.results.at(p.id);
    const long n = plan.for_piece(p.id).floors;
    out.monodromy_order = std::lcm(out.monodromy_order, n);
    if (r.connected()) {
      Piece q;
      q.id = primed(p.id);
      q.surface = r.components.front();
      for (const auto& b : r.boundaries) {
        if (!glued.count({p.id, b.torus})) {
          q.free_boundary += b.copies;
        } else if (b.copies == 1) {
          q.slots.push_back(b.torus);
        } else {
          for (long j = 0; j < b.copies; ++j) q.slots.push_back(copy_id(b.torus, j));
        }
      }
      map.pieces.push_back(std::move(q));
      continue;
    }
    Orbit orbit;
    for (long j = 0; j < n; ++j) {
      Piece q;
      q.id = n == 1 ? primed(p.id) : copy_id(primed(p.id), j);
      q.surface = r.components[j];
      for (const auto& b : r.boundaries) {
        if (glued.count({p.id, b.torus})) {
          q.slots.push_back(b.torus);
        } else {
          ++q.free_boundary;
        }
      }
      orbit.pieces.push_back(q.id);
      map.pieces.push_back(std::move(q));
    }
    if (n > 1) map.orbits.push_back(std::move(orbit));
  }

  for (const auto& g : m.gluings) {
    const Junction& jn = an.junctions.at(g.id);
    const long copies = jn.a.boundary->copies;
    Orbit orbit;
    for (long j = 0; j < copies; ++j) {
      ReducingCurve c;
      c.id = copies == 1 ? g.id : copy_id(g.id, j);
      c.a = junction_end(g.a, jn.a, j);
      c.b = junction_end(g.b, jn.b, positive_mod(g.matrix.d * j, copies));
      c.twist = jn.twist;
      orbit.curves.push_back(c.id);
      map.curves.push_back(std::move(c));
    }
    if (copies > 1) map.orbits.push_back(std::move(orbit));
  }

  // Assemble the fiber: pieces joined by curves.
  std::map<std::string, std::string> parent;
  for (const auto& p : map.pieces) parent[p.id] = p.id;
  auto find = [&](std::string x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : map.curves) parent[find(c.a.piece)] = find(c.b.piece);
  std::map<std::string, std::pair<long, long>> comp;  // root -> (χ, free boundary)
  std::vector<std::string> order;
  for (const auto& p : map.pieces) {
    const std::string root = find(p.id);
    if (!comp.count(root)) order.push_back(root);
    comp[root].first += euler_characteristic(p.surface);
    comp[root].second += p.free_boundary;
  }
  for (const auto& root : order) {
    auto [chi, b] = comp[root];
    out.fiber_components.push_back({(2 - chi - b) / 2, b});
  }
  out.fiber_connected = out.fiber_components.size() == 1;
  if (out.fiber_connected) out.fiber = out.fiber_components.front();
  return out;
}

std::optional<Surface> solve_piece_topology(long genus, long boundary, long floors, long arcs) {
  const long n = floors;
  const long k = arcs;
  if (n < 1 || k < 0) return std::nullopt;
  if (k == 0) {
    if (n != 1) return std::nullopt;
    return Surface{genus, boundary};
  }
  if ((genus - 1 + k) % n != 0 || (boundary - 2 * k) % n != 0) return std::nullopt;
  Surface s{(genus - 1 + k) / n - k + 1, (boundary - 2 * k) / n + 2 * k};
  if (s.genus < 0 || s.boundary < 2 * k) return std::nullopt;
  if (!(staircase_surface(s, k, n) == Surface{genus, boundary})) return std::nullopt;
  return s;
}

}  // namespace fibcomm
