#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fibcomm/io.hpp"

namespace fibcomm::cli {

/// Runs one subcommand on input files and returns its machine document.
/// `options` may carry "mode", "k", "radius", "below" and "powers".
/// Throws io::ParseError or std::invalid_argument on bad input.
io::json execute(const std::string& command, const std::vector<std::filesystem::path>& inputs,
                 const io::json& options = io::json::object());

struct CorpusResult {
  io::json report;
  bool ok = false;
};

/// Runs every entry under `root` (one directory per entry) with up to
/// `jobs` entries in flight; the report lists entries in name order.
CorpusResult verify_corpus(const std::filesystem::path& root, unsigned jobs);

/// Indented key/value rendering of a machine document.
std::string render_text(const io::json& doc);

/// Command-line entry point. Exit codes: 0 success, 1 corpus mismatch,
/// 2 malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibcomm::cli
