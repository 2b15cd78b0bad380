#pragma once

// JSON documents for every input and output type. Rationals are written as
// "p/q" strings; objects are emitted with sorted keys so that a document
// parsed and written again is byte-identical.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "fibcomm/covering.hpp"
#include "fibcomm/pseudo_anosov.hpp"
#include "fibcomm/reducible.hpp"
#include "fibcomm/staircase.hpp"
#include "fibcomm/torus.hpp"

namespace fibcomm::io {

using json = nlohmann::json;

/// Malformed document; `pointer` is a JSON pointer to the offending value.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

std::string dump(const json& j);  // canonical text, trailing newline
json load_file(const std::filesystem::path& p);
std::string document_type(const json& j);

json to_json(const Rational& r);
json to_json(const Matrix2& m);
json to_json(const Surface& s);
json to_json(const QuadraticUnit& u);
json to_json(const DilatationLabel& l);
json to_json(const PairInvariant& x);
json to_json(const PairSet& s);
json to_json(const ReducibleMap& m);
json to_json(const CoveringData& c);
json to_json(const FiberedGraphManifold& m);
json to_json(const RefiberPlan& p);
json to_json(const BranchData& b);
json to_json(const SpectrumQuery& q);
json to_json(const SingularityVector& v);

Rational rational_from(const json& j, const std::string& ptr);
Matrix2 matrix_from(const json& j, const std::string& ptr);
ReducibleMap reducible_map_from(const json& j, const std::string& ptr = "");
CoveringData covering_data_from(const json& j, const std::string& ptr = "");
FiberedGraphManifold manifold_from(const json& j, const std::string& ptr = "");
RefiberPlan plan_from(const json& j, const std::string& ptr = "");
BranchData branch_data_from(const json& j, const std::string& ptr = "");
SpectrumQuery spectrum_query_from(const json& j, const std::string& ptr = "");

/// A manifold and plan given inline or as paths relative to the document.
struct RefibrationDoc {
  std::variant<std::string, FiberedGraphManifold> manifold;
  std::variant<std::string, RefiberPlan> plan;
};

RefibrationDoc refibration_from(const json& j, const std::string& ptr = "");
json to_json(const RefibrationDoc& d);
std::pair<FiberedGraphManifold, RefiberPlan> resolve(const RefibrationDoc& d, const std::filesystem::path& base);

/// Re-emits a typed document through its parser; untyped documents are
/// returned unchanged.
json canonicalize(const json& j);

json invariants_json(const ReducibleMap& m);
json verdict_json(const Verdict& v, CompareMode mode);
json nt_class_json(const NTClass& c);
json law_report_json(const LawReport& r);
json refibration_json(const FiberedGraphManifold& m, const RefiberPlan& plan, const Refibration& r);
json spectrum_json(const Spectrum& s, std::optional<Rational> count_below);

}  // namespace fibcomm::io
