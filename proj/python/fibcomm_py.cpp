#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fibcomm/cli.hpp"

namespace py = pybind11;
using namespace fibcomm;
using io::json;

namespace {

std::array<Integer, 4> entries(const std::vector<std::vector<long>>& m) {
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) throw std::invalid_argument("expected a 2x2 matrix");
  return {m[0][0], m[0][1], m[1][0], m[1][1]};
}

Matrix2 to_matrix(const std::vector<std::vector<long>>& m) {
  auto e = entries(m);
  return {e[0], e[1], e[2], e[3]};
}

QuadraticUnit to_unit(long d, const std::string& a, const std::string& b) {
  return QuadraticUnit(Integer(d), Rational::parse(a), Rational::parse(b));
}

}  // namespace

PYBIND11_MODULE(_fibcomm, m) {
  m.doc() = "Exact commensurability invariants (JSON-string interface)";

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def(
      "execute",
      [](const std::string& command, const std::vector<std::string>& inputs, const std::string& options) {
        std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
        return cli::execute(command, paths, json::parse(options)).dump();
      },
      py::arg("command"), py::arg("inputs"), py::arg("options") = "{}");

  m.def("fundamental_unit", [](long d) {
    QuadraticUnit u = fundamental_unit(Integer(d));
    return py::make_tuple(u.a().str(), u.b().str(), u.norm());
  });

  m.def("unit_log_ratio", [](long d1, const std::string& a1, const std::string& b1, long d2, const std::string& a2,
                             const std::string& b2) -> std::optional<std::string> {
    auto s = unit_log_ratio(to_unit(d1, a1, b1), to_unit(d2, a2, b2));
    if (!s) return std::nullopt;
    return s->str();
  });

  m.def("squarefree_part", [](long n) { return squarefree_part(Integer(n)).get_si(); });
  m.def("euler_characteristic", [](long g, long n) { return euler_characteristic(Surface{g, n}); });
  m.def("surfaces_commensurable",
        [](long g1, long n1, long g2, long n2) { return surfaces_commensurable(Surface{g1, n1}, Surface{g2, n2}); });

  m.def("classify_torus", [](const std::vector<std::vector<long>>& mat) {
    return io::nt_class_json(classify_torus(to_matrix(mat))).dump();
  });

  m.def("torus_commensurable", [](const std::vector<std::vector<long>>& a, const std::vector<std::vector<long>>& b) {
    TorusVerdict v = torus_commensurable(to_matrix(a), to_matrix(b));
    static const char* names[] = {"commensurable", "incommensurable", "same_class_trivial"};
    return py::make_tuple(names[static_cast<int>(v.kind)], v.s ? py::object(py::str(v.s->str())) : py::object(py::none()));
  });

  m.def("invariants", [](const std::string& doc) {
    return io::invariants_json(io::reducible_map_from(json::parse(doc))).dump();
  });

  m.def(
      "compare",
      [](const std::string& d1, const std::string& d2, const std::string& mode) {
        CompareMode cm = parse_compare_mode(mode);
        return io::verdict_json(compare(io::reducible_map_from(json::parse(d1)), io::reducible_map_from(json::parse(d2)), cm), cm)
            .dump();
      },
      py::arg("phi1"), py::arg("phi2"), py::arg("mode") = "full");

  m.def("power", [](const std::string& doc, unsigned long k) {
    return io::to_json(power(io::reducible_map_from(json::parse(doc)), k)).dump();
  });

  m.def("normalize", [](const std::string& doc) {
    NormalizeResult r = normalize_unit_twists(io::reducible_map_from(json::parse(doc)));
    return py::make_tuple(io::to_json(r.map).dump(), r.certificate.power, r.certificate.degree);
  });

  m.def("staircase", [](const std::string& manifold, const std::string& plan) {
    FiberedGraphManifold mf = io::manifold_from(json::parse(manifold));
    RefiberPlan p = io::plan_from(json::parse(plan));
    return io::refibration_json(mf, p, refiber(mf, p)).dump();
  });

  m.def("spectrum", [](const std::string& query) {
    return io::spectrum_json(spectrum_values(io::spectrum_query_from(json::parse(query))), std::nullopt).dump();
  });

  py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);
}
