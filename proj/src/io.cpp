#include "fibcomm/io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace fibcomm::io {

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') {
      out += "~0";
    } else if (ch == '/') {
      out += "~1";
    } else {
      out += ch;
    }
  }
  return out;
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + escape(key); }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }
std::string where(const std::string& ptr) { return ptr.empty() ? "/" : ptr; }

void require_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ParseError(where(ptr), "expected an object");
}

void require_array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw ParseError(where(ptr), "expected an array");
}

void check_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
  require_object(j, ptr);
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ParseError(child(ptr, item.key()), "unexpected key");
  }
}

const json& field(const json& j, const char* key, const std::string& ptr) {
  require_object(j, ptr);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(ptr, key), "missing");
  return *it;
}

const json* optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

long long_from(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ParseError(where(ptr), "expected an integer");
  return j.get<long>();
}

std::string string_from(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw ParseError(where(ptr), "expected a string");
  return j.get<std::string>();
}

bool bool_from(const json& j, const std::string& ptr) {
  if (!j.is_boolean()) throw ParseError(where(ptr), "expected a boolean");
  return j.get<bool>();
}

Integer integer_from(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Rational r;
    try {
      r = Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where(ptr), e.what());
    }
    if (!r.is_integer()) throw ParseError(where(ptr), "expected an integer");
    return r.num();
  }
  throw ParseError(where(ptr), "expected an integer");
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

std::vector<std::string> strings_from(const json& j, const std::string& ptr) {
  require_array(j, ptr);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_from(j[i], child(ptr, i)));
  return out;
}

void expect_type(const json& j, const std::string& ptr, const char* type) {
  require_object(j, ptr);
  if (const json* t = optional_field(j, "type")) {
    if (string_from(*t, child(ptr, "type")) != type) {
      throw ParseError(child(ptr, "type"), std::string("expected document type '") + type + "'");
    }
  }
}

Surface surface_from(const json& j, const std::string& ptr) {
  check_keys(j, ptr, {"genus", "boundary"});
  Surface s{long_from(field(j, "genus", ptr), child(ptr, "genus")),
            long_from(field(j, "boundary", ptr), child(ptr, "boundary"))};
  if (s.genus < 0 || s.boundary < 0) throw ParseError(where(ptr), "negative genus or boundary count");
  return s;
}

DilatationLabel label_from(const json& j, const std::string& ptr) {
  require_object(j, ptr);
  if (const json* e = optional_field(j, "exact")) {
    check_keys(j, ptr, {"exact"});
    const std::string p = child(ptr, "exact");
    check_keys(*e, p, {"d", "a", "b"});
    try {
      return QuadraticUnit(integer_from(field(*e, "d", p), child(p, "d")), rational_from(field(*e, "a", p), child(p, "a")),
                           rational_from(field(*e, "b", p), child(p, "b")));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(p, ex.what());
    }
  }
  check_keys(j, ptr, {"symbol", "exponent", "rotation"});
  SymbolLabel s;
  s.name = string_from(field(j, "symbol", ptr), child(ptr, "symbol"));
  if (const json* x = optional_field(j, "exponent")) s.exponent = rational_from(*x, child(ptr, "exponent"));
  if (const json* r = optional_field(j, "rotation")) s.rotation = rational_from(*r, child(ptr, "rotation"));
  return s;
}

CurveEnd end_from(const json& j, const std::string& ptr) {
  check_keys(j, ptr, {"piece", "slot"});
  return {string_from(field(j, "piece", ptr), child(ptr, "piece")), string_from(field(j, "slot", ptr), child(ptr, "slot"))};
}

TorusRef torus_ref_from(const json& j, const std::string& ptr) {
  check_keys(j, ptr, {"piece", "torus"});
  return {string_from(field(j, "piece", ptr), child(ptr, "piece")), string_from(field(j, "torus", ptr), child(ptr, "torus"))};
}

std::array<Rational, 2> point_from(const json& j, const std::string& ptr) {
  require_array(j, ptr);
  if (j.size() != 2) throw ParseError(where(ptr), "expected two coordinates");
  return {rational_from(j[0], child(ptr, 0)), rational_from(j[1], child(ptr, 1))};
}

json point_json(const std::array<Rational, 2>& p) { return json::array({to_json(p[0]), to_json(p[1])}); }

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("/", "cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("/", p.string() + ": " + e.what());
  }
}

std::string document_type(const json& j) {
  if (!j.is_object()) return "";
  auto it = j.find("type");
  return it != j.end() && it->is_string() ? it->get<std::string>() : "";
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const Matrix2& m) {
  return json::array({json::array({integer_json(m.a), integer_json(m.b)}), json::array({integer_json(m.c), integer_json(m.d)})});
}

json to_json(const Surface& s) { return {{"genus", s.genus}, {"boundary", s.boundary}}; }

json to_json(const QuadraticUnit& u) { return {{"d", integer_json(u.d())}, {"a", to_json(u.a())}, {"b", to_json(u.b())}}; }

json to_json(const DilatationLabel& l) {
  if (const auto* u = std::get_if<QuadraticUnit>(&l)) return {{"exact", to_json(*u)}};
  const auto& s = std::get<SymbolLabel>(l);
  json j = {{"symbol", s.name}};
  if (s.exponent != 1) j["exponent"] = to_json(s.exponent);
  if (s.rotation) j["rotation"] = to_json(*s.rotation);
  return j;
}

json to_json(const PairInvariant& x) { return json::array({to_json(x.p), to_json(x.q)}); }

json to_json(const PairSet& s) {
  json j = json::array();
  for (const auto& x : s) j.push_back(to_json(x));
  return j;
}

json to_json(const ReducibleMap& m) {
  json pieces = json::array();
  for (const auto& p : m.pieces) {
    json jp = {{"id", p.id},
               {"surface", to_json(p.surface)},
               {"slots", p.slots},
               {"free_boundary", p.free_boundary},
               {"kind", p.kind == PieceKind::Periodic ? "periodic" : "pseudo_anosov"}};
    if (p.dilatation) jp["dilatation"] = to_json(*p.dilatation);
    pieces.push_back(std::move(jp));
  }
  json curves = json::array();
  for (const auto& c : m.curves) {
    curves.push_back({{"id", c.id},
                      {"a", {{"piece", c.a.piece}, {"slot", c.a.slot}}},
                      {"b", {{"piece", c.b.piece}, {"slot", c.b.slot}}},
                      {"twist", to_json(c.twist)}});
  }
  json j = {{"type", "reducible_map"}, {"pieces", pieces}, {"curves", curves}};
  if (!m.orbits.empty()) {
    json orbits = json::array();
    for (const auto& o : m.orbits) orbits.push_back({{"pieces", o.pieces}, {"curves", o.curves}});
    j["orbits"] = orbits;
  }
  return j;
}

json to_json(const CoveringData& c) {
  json comps = json::object();
  for (const auto& [id, degrees] : c.components) comps[id] = degrees;
  json curves = json::object();
  for (const auto& [id, lifts] : c.curves) {
    json arr = json::array();
    for (const auto& l : lifts) arr.push_back({{"degree", l.degree}, {"a", l.component_a}, {"b", l.component_b}});
    curves[id] = arr;
  }
  return {{"type", "covering_data"}, {"components", comps}, {"curves", curves}};
}

json to_json(const FiberedGraphManifold& m) {
  json pieces = json::array();
  for (const auto& p : m.pieces) pieces.push_back({{"id", p.id}, {"genus", p.genus}, {"tori", p.tori}});
  json gluings = json::array();
  for (const auto& g : m.gluings) {
    gluings.push_back({{"id", g.id},
                       {"a", {{"piece", g.a.piece}, {"torus", g.a.torus}}},
                       {"b", {{"piece", g.b.piece}, {"torus", g.b.torus}}},
                       {"matrix", to_json(g.matrix)}});
  }
  return {{"type", "fibered_graph_manifold"}, {"pieces", pieces}, {"gluings", gluings}};
}

json to_json(const RefiberPlan& p) {
  json pieces = json::object();
  for (const auto& [id, pp] : p.pieces) {
    json arcs = json::array();
    for (const auto& a : pp.arcs) arcs.push_back({{"tail", a.tail}, {"head", a.head}});
    json jp = {{"floors", pp.floors}, {"arcs", arcs}};
    if (pp.circle) jp["circle"] = true;
    pieces[id] = jp;
  }
  return {{"type", "refiber_plan"}, {"pieces", pieces}};
}

json to_json(const BranchData& b) {
  json j = {{"type", "branch_data"}, {"degree", b.degree}, {"branch_points", b.branch_points}};
  if (b.matrix) j["matrix"] = to_json(*b.matrix);
  return j;
}

json to_json(const SpectrumQuery& q) {
  json j = {{"type", "spectrum_query"},
            {"matrix", to_json(q.matrix)},
            {"O", point_json(q.O)},
            {"P", point_json(q.P)},
            {"radius", q.radius}};
  if (q.branch) j["branch"] = to_json(*q.branch);
  return j;
}

json to_json(const SingularityVector& v) {
  json j = json::object();
  for (const auto& [p, n] : v) j[std::to_string(p)] = integer_json(n);
  return j;
}

Rational rational_from(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(where(ptr), "expected a rational \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where(ptr), e.what());
  }
}

Matrix2 matrix_from(const json& j, const std::string& ptr) {
  require_array(j, ptr);
  if (j.size() != 2) throw ParseError(where(ptr), "expected a 2x2 matrix");
  Integer e[4];
  for (std::size_t r = 0; r < 2; ++r) {
    const std::string rp = child(ptr, r);
    require_array(j[r], rp);
    if (j[r].size() != 2) throw ParseError(rp, "expected two entries");
    for (std::size_t c = 0; c < 2; ++c) e[2 * r + c] = integer_from(j[r][c], child(rp, c));
  }
  return {e[0], e[1], e[2], e[3]};
}

ReducibleMap reducible_map_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "reducible_map");
  check_keys(j, ptr, {"type", "pieces", "curves", "orbits"});
  ReducibleMap m;
  const std::string pp = child(ptr, "pieces");
  const json& pieces = field(j, "pieces", ptr);
  require_array(pieces, pp);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string p = child(pp, i);
    const json& jp = pieces[i];
    check_keys(jp, p, {"id", "surface", "slots", "free_boundary", "kind", "dilatation"});
    Piece piece;
    piece.id = string_from(field(jp, "id", p), child(p, "id"));
    piece.surface = surface_from(field(jp, "surface", p), child(p, "surface"));
    piece.slots = strings_from(field(jp, "slots", p), child(p, "slots"));
    piece.free_boundary = long_from(field(jp, "free_boundary", p), child(p, "free_boundary"));
    const std::string kind = string_from(field(jp, "kind", p), child(p, "kind"));
    if (kind == "periodic") {
      piece.kind = PieceKind::Periodic;
    } else if (kind == "pseudo_anosov") {
      piece.kind = PieceKind::PseudoAnosov;
    } else {
      throw ParseError(child(p, "kind"), "expected \"periodic\" or \"pseudo_anosov\"");
    }
    if (const json* d = optional_field(jp, "dilatation")) piece.dilatation = label_from(*d, child(p, "dilatation"));
    m.pieces.push_back(std::move(piece));
  }
  const std::string cp = child(ptr, "curves");
  const json& curves = field(j, "curves", ptr);
  require_array(curves, cp);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string p = child(cp, i);
    const json& jc = curves[i];
    check_keys(jc, p, {"id", "a", "b", "twist"});
    m.curves.push_back({string_from(field(jc, "id", p), child(p, "id")), end_from(field(jc, "a", p), child(p, "a")),
                        end_from(field(jc, "b", p), child(p, "b")), rational_from(field(jc, "twist", p), child(p, "twist"))});
  }
  if (const json* orbits = optional_field(j, "orbits")) {
    const std::string op = child(ptr, "orbits");
    require_array(*orbits, op);
    for (std::size_t i = 0; i < orbits->size(); ++i) {
      const std::string p = child(op, i);
      check_keys((*orbits)[i], p, {"pieces", "curves"});
      Orbit o;
      if (const json* x = optional_field((*orbits)[i], "pieces")) o.pieces = strings_from(*x, child(p, "pieces"));
      if (const json* x = optional_field((*orbits)[i], "curves")) o.curves = strings_from(*x, child(p, "curves"));
      m.orbits.push_back(std::move(o));
    }
  }
  return m;
}

CoveringData covering_data_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "covering_data");
  check_keys(j, ptr, {"type", "components", "curves"});
  CoveringData c;
  const std::string cp = child(ptr, "components");
  const json& comps = field(j, "components", ptr);
  require_object(comps, cp);
  for (const auto& item : comps.items()) {
    const std::string p = child(cp, item.key());
    require_array(item.value(), p);
    std::vector<long> degrees;
    for (std::size_t i = 0; i < item.value().size(); ++i) degrees.push_back(long_from(item.value()[i], child(p, i)));
    c.components[item.key()] = degrees;
  }
  const std::string lp = child(ptr, "curves");
  const json& curves = field(j, "curves", ptr);
  require_object(curves, lp);
  for (const auto& item : curves.items()) {
    const std::string p = child(lp, item.key());
    require_array(item.value(), p);
    std::vector<CurveLift> lifts;
    for (std::size_t i = 0; i < item.value().size(); ++i) {
      const std::string q = child(p, i);
      const json& jl = item.value()[i];
      check_keys(jl, q, {"degree", "a", "b"});
      lifts.push_back({long_from(field(jl, "degree", q), child(q, "degree")), long_from(field(jl, "a", q), child(q, "a")),
                       long_from(field(jl, "b", q), child(q, "b"))});
    }
    c.curves[item.key()] = lifts;
  }
  return c;
}

FiberedGraphManifold manifold_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "fibered_graph_manifold");
  check_keys(j, ptr, {"type", "pieces", "gluings"});
  FiberedGraphManifold m;
  const std::string pp = child(ptr, "pieces");
  const json& pieces = field(j, "pieces", ptr);
  require_array(pieces, pp);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string p = child(pp, i);
    check_keys(pieces[i], p, {"id", "genus", "tori"});
    m.pieces.push_back({string_from(field(pieces[i], "id", p), child(p, "id")),
                        long_from(field(pieces[i], "genus", p), child(p, "genus")),
                        strings_from(field(pieces[i], "tori", p), child(p, "tori"))});
  }
  const std::string gp = child(ptr, "gluings");
  const json& gluings = field(j, "gluings", ptr);
  require_array(gluings, gp);
  for (std::size_t i = 0; i < gluings.size(); ++i) {
    const std::string p = child(gp, i);
    const json& jg = gluings[i];
    check_keys(jg, p, {"id", "a", "b", "matrix"});
    m.gluings.push_back({string_from(field(jg, "id", p), child(p, "id")), torus_ref_from(field(jg, "a", p), child(p, "a")),
                         torus_ref_from(field(jg, "b", p), child(p, "b")), matrix_from(field(jg, "matrix", p), child(p, "matrix"))});
  }
  return m;
}

RefiberPlan plan_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "refiber_plan");
  check_keys(j, ptr, {"type", "pieces"});
  RefiberPlan plan;
  const std::string pp = child(ptr, "pieces");
  const json& pieces = field(j, "pieces", ptr);
  require_object(pieces, pp);
  for (const auto& item : pieces.items()) {
    const std::string p = child(pp, item.key());
    const json& jp = item.value();
    check_keys(jp, p, {"floors", "arcs", "circle"});
    PiecePlan piece;
    piece.floors = long_from(field(jp, "floors", p), child(p, "floors"));
    if (piece.floors < 1) throw ParseError(child(p, "floors"), "floor count must be at least 1");
    if (const json* arcs = optional_field(jp, "arcs")) {
      const std::string ap = child(p, "arcs");
      require_array(*arcs, ap);
      for (std::size_t i = 0; i < arcs->size(); ++i) {
        const std::string q = child(ap, i);
        check_keys((*arcs)[i], q, {"tail", "head"});
        piece.arcs.push_back({string_from(field((*arcs)[i], "tail", q), child(q, "tail")),
                              string_from(field((*arcs)[i], "head", q), child(q, "head"))});
      }
    }
    if (const json* c = optional_field(jp, "circle")) piece.circle = bool_from(*c, child(p, "circle"));
    plan.pieces[item.key()] = piece;
  }
  return plan;
}

BranchData branch_data_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "branch_data");
  check_keys(j, ptr, {"type", "degree", "branch_points", "matrix"});
  BranchData b;
  b.degree = long_from(field(j, "degree", ptr), child(ptr, "degree"));
  const std::string bp = child(ptr, "branch_points");
  const json& points = field(j, "branch_points", ptr);
  require_array(points, bp);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string p = child(bp, i);
    require_array(points[i], p);
    std::vector<long> part;
    for (std::size_t k = 0; k < points[i].size(); ++k) part.push_back(long_from(points[i][k], child(p, k)));
    b.branch_points.push_back(part);
  }
  if (const json* m = optional_field(j, "matrix")) b.matrix = matrix_from(*m, child(ptr, "matrix"));
  return b;
}

SpectrumQuery spectrum_query_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "spectrum_query");
  check_keys(j, ptr, {"type", "matrix", "O", "P", "radius", "branch"});
  SpectrumQuery q;
  q.matrix = matrix_from(field(j, "matrix", ptr), child(ptr, "matrix"));
  q.O = point_from(field(j, "O", ptr), child(ptr, "O"));
  q.P = point_from(field(j, "P", ptr), child(ptr, "P"));
  q.radius = long_from(field(j, "radius", ptr), child(ptr, "radius"));
  if (q.radius < 1) throw ParseError(child(ptr, "radius"), "radius must be at least 1");
  if (const json* b = optional_field(j, "branch")) q.branch = branch_data_from(*b, child(ptr, "branch"));
  return q;
}

RefibrationDoc refibration_from(const json& j, const std::string& ptr) {
  expect_type(j, ptr, "refibration");
  check_keys(j, ptr, {"type", "manifold", "plan"});
  RefibrationDoc d;
  const json& m = field(j, "manifold", ptr);
  if (m.is_string()) {
    d.manifold = m.get<std::string>();
  } else {
    d.manifold = manifold_from(m, child(ptr, "manifold"));
  }
  const json& p = field(j, "plan", ptr);
  if (p.is_string()) {
    d.plan = p.get<std::string>();
  } else {
    d.plan = plan_from(p, child(ptr, "plan"));
  }
  return d;
}

json to_json(const RefibrationDoc& d) {
  json j = {{"type", "refibration"}};
  if (const auto* path = std::get_if<std::string>(&d.manifold)) {
    j["manifold"] = *path;
  } else {
    j["manifold"] = to_json(std::get<FiberedGraphManifold>(d.manifold));
  }
  if (const auto* path = std::get_if<std::string>(&d.plan)) {
    j["plan"] = *path;
  } else {
    j["plan"] = to_json(std::get<RefiberPlan>(d.plan));
  }
  return j;
}

std::pair<FiberedGraphManifold, RefiberPlan> resolve(const RefibrationDoc& d, const std::filesystem::path& base) {
  FiberedGraphManifold m;
  if (const auto* path = std::get_if<std::string>(&d.manifold)) {
    m = manifold_from(load_file(base / *path));
  } else {
    m = std::get<FiberedGraphManifold>(d.manifold);
  }
  RefiberPlan p;
  if (const auto* path = std::get_if<std::string>(&d.plan)) {
    p = plan_from(load_file(base / *path));
  } else {
    p = std::get<RefiberPlan>(d.plan);
  }
  return {m, p};
}

json canonicalize(const json& j) {
  const std::string t = document_type(j);
  if (t == "reducible_map") return to_json(reducible_map_from(j));
  if (t == "covering_data") return to_json(covering_data_from(j));
  if (t == "fibered_graph_manifold") return to_json(manifold_from(j));
  if (t == "refiber_plan") return to_json(plan_from(j));
  if (t == "refibration") return to_json(refibration_from(j));
  if (t == "branch_data") return to_json(branch_data_from(j));
  if (t == "spectrum_query") return to_json(spectrum_query_from(j));
  if (t == "torus") {
    check_keys(j, "", {"type", "matrix"});
    return {{"type", "torus"}, {"matrix", to_json(matrix_from(field(j, "matrix", ""), "/matrix"))}};
  }
  return j;
}

json invariants_json(const ReducibleMap& m) {
  InvariantBundle b = invariants(m);
  json pieces = json::array();
  for (const auto& p : m.pieces) {
    PairInvariant a = A_piece(m, p.id);
    pieces.push_back({{"id", p.id},
                      {"chi", euler_characteristic(p.surface)},
                      {"A", to_json(a)},
                      {"normalized", to_json(a.scaled(Rational(-euler_characteristic(p.surface)).reciprocal()))}});
  }
  json poly = json::array();
  for (const auto& [key, coeff] : b.P.coefficients) poly.push_back({{"exponent", to_json(key)}, {"coefficient", to_json(coeff)}});
  json labels = json::array();
  for (const auto& l : b.dilatations) labels.push_back(to_json(l));
  return {{"type", "invariants"},
          {"A", to_json(b.A)},
          {"A_direct", to_json(A_total_direct(m))},
          {"A_normalized", to_json(b.normalized_A())},
          {"chi", b.chi},
          {"pi", to_json(b.Pi)},
          {"polynomial", poly},
          {"polynomial_at_one", to_json(b.P.at_one())},
          {"dilatations", labels},
          {"pieces", pieces}};
}

json verdict_json(const Verdict& v, CompareMode mode) {
  json feasible = json::array();
  for (const auto& f : v.feasible) feasible.push_back({{"s", to_json(f.s)}, {"flip", f.flipped}});
  json j = {{"type", "verdict"},
            {"mode", to_string(mode)},
            {"verdict", v.incommensurable ? "incommensurable" : "not_obstructed"},
            {"feasible", feasible}};
  if (v.incommensurable) j["witness"] = v.witness;
  return j;
}

json nt_class_json(const NTClass& c) {
  json j = {{"type", "nt_class"}, {"kind", to_string(c.kind)}};
  if (c.kind == NTKind::Periodic) j["period"] = c.period;
  if (c.dilatation) {
    j["dilatation"] = to_json(*c.dilatation);
    j["dilatation_text"] = c.dilatation->str();
    j["norm"] = c.dilatation->norm();
  }
  return j;
}

json law_report_json(const LawReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"id", c.id}, {"law", c.law}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  }
  json issues = json::array();
  for (const auto& i : r.cover_issues) issues.push_back({{"id", i.id}, {"message", i.message}});
  return {{"ok", r.ok()}, {"checks", checks}, {"cover_issues", issues}};
}

json refibration_json(const FiberedGraphManifold& m, const RefiberPlan& plan, const Refibration& r) {
  static const char* roles[] = {"horizontal", "tail", "head"};
  json pieces = json::array();
  for (const auto& p : m.pieces) {
    StaircasePieceResult s = staircase_piece(p, plan.for_piece(p.id));
    json comps = json::array();
    for (const auto& c : s.components) comps.push_back(to_json(c));
    json bounds = json::array();
    for (const auto& b : s.boundaries) {
      bounds.push_back({{"torus", b.torus},
                        {"role", roles[static_cast<int>(b.role)]},
                        {"copies", b.copies},
                        {"slope", json::array({integer_json(b.slope[0]), integer_json(b.slope[1])})},
                        {"rotation", to_json(b.rotation)}});
    }
    pieces.push_back({{"id", p.id}, {"floors", plan.for_piece(p.id).floors}, {"components", comps}, {"boundaries", bounds}});
  }
  json twists = json::object();
  for (const auto& c : r.map.curves) twists[c.id] = to_json(c.twist);
  json dtype = json::object();
  for (const auto& c : power(r.map, static_cast<unsigned long>(r.monodromy_order)).curves) dtype[c.id] = to_json(c.twist);
  json comps = json::array();
  for (const auto& c : r.fiber_components) comps.push_back(to_json(c));
  json j = {{"type", "refibration_result"},
            {"connected", r.fiber_connected},
            {"fiber_components", comps},
            {"monodromy_order", r.monodromy_order},
            {"staircases", pieces},
            {"twists", twists},
            {"d_type_twists", dtype},
            {"uncalibrated", r.uncalibrated},
            {"map", to_json(r.map)},
            {"invariants", invariants_json(r.map)}};
  if (r.fiber_connected) j["fiber"] = to_json(r.fiber);
  return j;
}

json spectrum_json(const Spectrum& s, std::optional<Rational> count_below) {
  auto value_json = [](const SpectrumValue& v) {
    return json{{"value", v.str()},
                {"coefficient", to_json(v.coefficient)},
                {"d", integer_json(v.d)},
                {"approx", v.to_double()},
                {"pairing", to_string(v.pairing)},
                {"translate", point_json(v.translate)}};
  };
  json values = json::array();
  for (const auto& v : s.values) values.push_back(value_json(v));
  json j = {{"type", "spectrum"},
            {"radius", s.radius},
            {"certified_subset", s.certified_subset},
            {"count", s.values.size()},
            {"values", values}};
  if (!s.values.empty()) {
    j["min"] = value_json(s.values.front());
    j["min_is_upper_bound"] = true;
  }
  if (count_below) {
    // ℓ = c·√d < C  ⇔  c²·d < C² for c ≥ 0.
    std::size_t n = 0;
    for (const auto& v : s.values) {
      if (v.coefficient * v.coefficient * Rational(v.d) < *count_below * *count_below) ++n;
    }
    j["count_below"] = {{"bound", to_json(*count_below)}, {"count", n}};
  }
  return j;
}

}  // namespace fibcomm::io
