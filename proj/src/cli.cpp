#include "fibcomm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

namespace fibcomm::cli {

using io::json;
namespace fs = std::filesystem;

namespace {

void need_inputs(const std::string& command, const std::vector<fs::path>& inputs, std::size_t n) {
  if (inputs.size() != n) {
    throw std::invalid_argument(command + " takes " + std::to_string(n) + " input file(s), got " +
                                std::to_string(inputs.size()));
  }
}

// Reducible maps come either directly or as the result of a refibration.
ReducibleMap load_map(const fs::path& p) {
  json doc = io::load_file(p);
  const std::string t = io::document_type(doc);
  if (t == "refibration") {
    auto [m, plan] = io::resolve(io::refibration_from(doc), p.parent_path());
    return refiber(m, plan).map;
  }
  return io::reducible_map_from(doc);
}

Matrix2 load_torus(const json& doc) {
  if (io::document_type(doc) != "torus") throw io::ParseError("/type", "expected document type 'torus'");
  return io::matrix_from(io::canonicalize(doc).at("matrix"), "/matrix");
}

std::optional<DilatationLabel> branch_label(const BranchData& b) {
  if (!b.matrix) return std::nullopt;
  NTClass c = classify_torus(*b.matrix);
  if (!c.dilatation) throw std::invalid_argument("branch data base map " + b.matrix->str() + " is not Anosov");
  return DilatationLabel(*c.dilatation);
}

json torus_verdict_json(const TorusVerdict& v) {
  static const char* names[] = {"commensurable", "incommensurable", "same_class_trivial"};
  json j = {{"type", "torus_verdict"}, {"verdict", names[static_cast<int>(v.kind)]}};
  if (v.s) j["s"] = io::to_json(*v.s);
  return j;
}

json execute_compare(const std::vector<fs::path>& inputs, const json& options) {
  need_inputs("compare", inputs, 2);
  json d1 = io::load_file(inputs[0]);
  json d2 = io::load_file(inputs[1]);
  if (io::document_type(d1) == "torus" && io::document_type(d2) == "torus") {
    return torus_verdict_json(torus_commensurable(load_torus(d1), load_torus(d2)));
  }
  CompareMode mode = parse_compare_mode(options.value("mode", std::string("full")));
  return io::verdict_json(compare(load_map(inputs[0]), load_map(inputs[1]), mode), mode);
}

json execute_reconstruct(const json& doc) {
  if (io::document_type(doc) != "reconstruction_targets") {
    throw io::ParseError("/type", "expected document type 'reconstruction_targets'");
  }
  json pieces = json::array();
  const json& targets = doc.at("targets");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const json& t = targets[i];
    const std::string ptr = "/targets/" + std::to_string(i);
    auto get = [&](const char* key) {
      if (!t.contains(key) || !t[key].is_number_integer()) throw io::ParseError(ptr + "/" + key, "expected an integer");
      return t[key].get<long>();
    };
    const long genus = get("genus"), boundary = get("boundary"), floors = get("floors"), arcs = get("arcs");
    auto s = solve_piece_topology(genus, boundary, floors, arcs);
    json entry = {{"piece", t.value("piece", std::string())},
                  {"target", {{"genus", genus}, {"boundary", boundary}}},
                  {"floors", floors},
                  {"arcs", arcs},
                  {"solved", s.has_value()}};
    if (s) {
      entry["base"] = io::to_json(*s);
      entry["check"] = io::to_json(staircase_surface(*s, arcs, floors));
    }
    pieces.push_back(entry);
  }
  return {{"type", "reconstruction"}, {"pieces", pieces}};
}

}  // namespace

json execute(const std::string& command, const std::vector<fs::path>& inputs, const json& options) {
  if (command == "classify") {
    need_inputs(command, inputs, 1);
    NTClass c = classify_torus(load_torus(io::load_file(inputs[0])));
    json j = io::nt_class_json(c);
    if (c.kind != NTKind::Anosov) {
      json reps = json::array();
      for (const auto& m : minimal_representatives(c.kind)) reps.push_back(io::to_json(m));
      j["minimal_representatives"] = reps;
    }
    return j;
  }
  if (command == "invariants") {
    need_inputs(command, inputs, 1);
    return io::invariants_json(load_map(inputs[0]));
  }
  if (command == "validate") {
    need_inputs(command, inputs, 1);
    json issues = json::array();
    for (const auto& i : validate(load_map(inputs[0]))) issues.push_back({{"id", i.id}, {"message", i.message}});
    return {{"type", "validation"}, {"ok", issues.empty()}, {"issues", issues}};
  }
  if (command == "compare") return execute_compare(inputs, options);
  if (command == "power") {
    need_inputs(command, inputs, 1);
    const long k = options.value("k", 1L);
    if (k < 1) throw std::invalid_argument("power must be positive");
    ReducibleMap m = load_map(inputs[0]);
    require_valid(m);
    return io::to_json(power(m, static_cast<unsigned long>(k)));
  }
  if (command == "cover") {
    need_inputs(command, inputs, 2);
    ReducibleMap m = load_map(inputs[0]);
    require_valid(m);
    CoveringData c = io::covering_data_from(io::load_file(inputs[1]));
    std::vector<unsigned long> powers = options.value("powers", std::vector<unsigned long>{1, 2, 3});
    LiftResult lift = lift_cover(m, c);
    return {{"type", "cover_result"},
            {"map", io::to_json(lift.map)},
            {"notes", lift.notes},
            {"laws", io::law_report_json(verify_cover_laws(m, c, powers))},
            {"invariants", io::invariants_json(lift.map)}};
  }
  if (command == "normalize") {
    need_inputs(command, inputs, 1);
    NormalizeResult r = normalize_unit_twists(load_map(inputs[0]));
    json twists = json::array();
    for (const auto& c : r.map.curves) twists.push_back(io::to_json(c.twist));
    return {{"type", "normalize_result"},
            {"map", io::to_json(r.map)},
            {"twists", twists},
            {"certificate",
             {{"power", r.certificate.power}, {"degree", r.certificate.degree}, {"cover", io::to_json(r.certificate.cover)}}}};
  }
  if (command == "staircase") {
    FiberedGraphManifold m;
    RefiberPlan plan;
    if (inputs.size() == 1) {
      std::tie(m, plan) = io::resolve(io::refibration_from(io::load_file(inputs[0])), inputs[0].parent_path());
    } else {
      need_inputs(command, inputs, 2);
      m = io::manifold_from(io::load_file(inputs[0]));
      plan = io::plan_from(io::load_file(inputs[1]));
    }
    return io::refibration_json(m, plan, refiber(m, plan));
  }
  if (command == "validate-plan") {
    need_inputs(command, inputs, 1);
    auto [m, plan] = io::resolve(io::refibration_from(io::load_file(inputs[0])), inputs[0].parent_path());
    json issues = json::array();
    bool ok = true;
    for (const auto& i : validate_plan(m, plan)) {
      issues.push_back({{"id", i.id}, {"message", i.message}, {"error", i.error}});
      ok = ok && !i.error;
    }
    return {{"type", "plan_validation"}, {"ok", ok}, {"issues", issues}};
  }
  if (command == "spectrum") {
    need_inputs(command, inputs, 1);
    SpectrumQuery q = io::spectrum_query_from(io::load_file(inputs[0]));
    if (options.contains("radius")) q.radius = options["radius"].get<long>();
    std::optional<Rational> below;
    if (options.contains("below")) below = io::rational_from(options["below"], "/options/below");
    return io::spectrum_json(spectrum_values(q), below);
  }
  if (command == "delta") {
    need_inputs(command, inputs, 1);
    BranchedSurface b = delta_from_branch_data(io::branch_data_from(io::load_file(inputs[0])));
    return {{"type", "branched_surface"},
            {"surface", io::to_json(b.surface)},
            {"chi", euler_characteristic(b.surface)},
            {"delta", io::to_json(b.delta)},
            {"euler_poincare", euler_poincare_sum(b.delta).get_si()}};
  }
  if (command == "pa") {
    need_inputs(command, inputs, 2);
    BranchData b1 = io::branch_data_from(io::load_file(inputs[0]));
    BranchData b2 = io::branch_data_from(io::load_file(inputs[1]));
    auto l1 = branch_label(b1);
    auto l2 = branch_label(b2);
    if (!l1 || !l2) throw std::invalid_argument("pa needs the base matrix in both branch data documents");
    PaVerdict v = pa_obstruction(*l1, delta_from_branch_data(b1).delta, *l2, delta_from_branch_data(b2).delta);
    json j = {{"type", "pa_verdict"}, {"verdict", v.pass ? "pass" : "fail"}};
    if (v.pass) {
      j["s"] = io::to_json(v.s);
      j["s_prime"] = io::to_json(v.s_prime);
    } else {
      j["witness"] = v.witness;
    }
    return j;
  }
  if (command == "reconstruct") {
    need_inputs(command, inputs, 1);
    return execute_reconstruct(io::load_file(inputs[0]));
  }
  if (command == "format") {
    need_inputs(command, inputs, 1);
    return io::canonicalize(io::load_file(inputs[0]));
  }
  throw std::invalid_argument("unknown command '" + command + "'");
}

namespace {

json verify_entry(const fs::path& dir) {
  json report = {{"id", dir.filename().string()}};
  json failures = json::array();
  std::size_t n_checks = 0;
  try {
    json entry = io::load_file(dir / "entry.json");
    json expected = io::load_file(dir / "expected.json");
    report["id"] = entry.at("id");
    std::map<std::string, json> outputs;
    for (const auto& c : entry.at("cases")) {
      std::vector<fs::path> inputs;
      for (const auto& i : c.at("inputs")) inputs.push_back(dir / i.get<std::string>());
      json options = c.value("options", json::object());
      try {
        outputs[c.at("name").get<std::string>()] = execute(c.at("command").get<std::string>(), inputs, options);
      } catch (const std::exception& e) {
        failures.push_back({{"case", c.at("name")}, {"error", e.what()}});
      }
    }
    for (const auto& check : expected.at("checks")) {
      ++n_checks;
      const std::string name = check.at("case").get<std::string>();
      const std::string path = check.at("path").get<std::string>();
      auto it = outputs.find(name);
      if (it == outputs.end()) {
        failures.push_back({{"case", name}, {"path", path}, {"error", "case produced no output"}});
        continue;
      }
      json::json_pointer ptr(path);
      if (!it->second.contains(ptr)) {
        failures.push_back({{"case", name}, {"path", path}, {"error", "path absent from output"}});
      } else if (it->second.at(ptr) != check.at("value")) {
        failures.push_back({{"case", name}, {"path", path}, {"expected", check.at("value")}, {"actual", it->second.at(ptr)}});
      }
    }
  } catch (const std::exception& e) {
    failures.push_back({{"error", e.what()}});
  }
  report["checks"] = n_checks;
  report["ok"] = failures.empty();
  report["failures"] = failures;
  return report;
}

}  // namespace

CorpusResult verify_corpus(const fs::path& root, unsigned jobs) {
  if (!fs::is_directory(root)) throw std::invalid_argument("corpus directory " + root.string() + " not found");
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory() && fs::exists(e.path() / "entry.json")) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  jobs = std::max(1u, jobs);

  std::vector<json> reports(dirs.size());
  for (std::size_t start = 0; start < dirs.size(); start += jobs) {
    std::vector<std::future<json>> batch;
    for (std::size_t i = start; i < std::min(dirs.size(), start + jobs); ++i) {
      batch.push_back(std::async(std::launch::async, verify_entry, dirs[i]));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) reports[start + i] = batch[i].get();
  }
  CorpusResult r;
  r.ok = true;
  for (const auto& rep : reports) r.ok = r.ok && rep.at("ok").get<bool>();
  r.report = {{"type", "corpus_report"}, {"ok", r.ok}, {"entries", reports}};
  return r;
}

namespace {

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Arrays nested at most two deep with scalar leaves print inline: pairs,
// slopes, matrices.
bool is_inline(const json& v, int depth = 0) {
  if (!v.is_structured()) return true;
  if (v.is_object() || depth == 2) return false;
  return std::all_of(v.begin(), v.end(), [&](const json& x) { return is_inline(x, depth + 1); });
}

std::string inline_str(const json& v) {
  if (!v.is_array()) return scalar(v);
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + inline_str(v[i]);
  return s + ")";
}

void render(const json& j, int indent, std::ostringstream& os) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& item : j.items()) {
      const json& v = item.value();
      if (is_inline(v) || v.empty()) {
        os << pad << item.key() << ": " << (v.is_object() ? "{}" : inline_str(v)) << "\n";
      } else {
        os << pad << item.key() << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_inline(v)) {
        os << pad << "- " << inline_str(v) << "\n";
      } else {
        os << pad << "-\n";
        render(v, indent + 2, os);
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream os;
  render(doc, 0, os);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commensurability invariants of surface automorphisms", "fibcomm"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  std::map<std::string, std::vector<std::string>> inputs;
  std::string mode = "full";
  long k = 1;
  long radius = 0;
  std::string below;
  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"classify", "Nielsen-Thurston class of a torus automorphism"},
      {"invariants", "A, Pi, P and dilatations of a decomposition graph"},
      {"validate", "Structural checks on a decomposition graph"},
      {"compare", "Commensurability obstruction for two maps"},
      {"power", "k-th power of a decomposition graph"},
      {"cover", "Lift a decomposition graph through covering data"},
      {"normalize", "Commensurable map with unit twists"},
      {"staircase", "Refiber a graph manifold by staircase surfaces"},
      {"validate-plan", "Check a refibration plan"},
      {"spectrum", "Spectrum values of a torus branched-cover model"},
      {"delta", "Surface and singularity vector from branch data"},
      {"pa", "Dilatation and singularity obstruction for two branch data documents"},
      {"reconstruct", "Solve staircase genus equations for base surfaces"},
      {"format", "Print a document in canonical form"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("inputs", inputs[s.name], "Input documents")->required();
    subs[s.name] = sub;
  }
  subs["compare"]->add_option("--mode", mode, "full, topological or combined")
      ->check(CLI::IsMember({"full", "topological", "combined"}));
  subs["power"]->add_option("-k,--power", k, "Exponent")->check(CLI::PositiveNumber);
  subs["spectrum"]->add_option("--radius", radius, "Lattice radius (overrides the query)")->check(CLI::PositiveNumber);
  subs["spectrum"]->add_option("--below", below, "Also count values below this bound");

  CLI::App* corpus = app.add_subcommand("corpus", "Example corpus");
  corpus->require_subcommand(1);
  CLI::App* verify = corpus->add_subcommand("verify", "Run every corpus entry and diff against expectations");
  std::string corpus_dir = "corpus";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  verify->add_option("dir", corpus_dir, "Corpus directory");
  verify->add_option("-j,--jobs", jobs, "Entries verified concurrently")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  auto emit = [&](const json& doc) { out << (format == "machine" ? io::dump(doc) : render_text(doc)); };

  try {
    if (verify->parsed()) {
      CorpusResult r = verify_corpus(corpus_dir, jobs);
      if (format == "machine") {
        out << io::dump(r.report);
      } else {
        for (const auto& e : r.report["entries"]) {
          out << e["id"].get<std::string>() << ": " << (e["ok"].get<bool>() ? "ok" : "MISMATCH") << " ("
              << e["checks"].get<std::size_t>() << " checks)\n";
          for (const auto& f : e["failures"]) out << "  " << f.dump() << "\n";
        }
        out << (r.ok ? "corpus ok\n" : "corpus mismatch\n");
      }
      return r.ok ? 0 : 1;
    }
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      json options = json::object();
      options["mode"] = mode;
      options["k"] = k;
      if (radius > 0) options["radius"] = radius;
      if (!below.empty()) options["below"] = below;
      std::vector<fs::path> paths(inputs[name].begin(), inputs[name].end());
      emit(execute(name, paths, options));
      return 0;
    }
  } catch (const io::ParseError& e) {
    err << "malformed input at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace fibcomm::cli
