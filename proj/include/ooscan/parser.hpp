#pragma once

// Source → code model. parse_unit handles one compilation unit; parse_project
// walks a directory, parses every matching file and merges the fragments.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ooscan/errors.hpp"
#include "ooscan/model.hpp"
#include "ooscan/source.hpp"

namespace ooscan {

struct ParsedUnit {
  CodeModel fragment;  // zero or one package
  std::vector<ParseDiagnostic> diagnostics;
  std::size_t dropped_comments = 0;  // comments with no owner or empty text
  bool skipped = false;              // fatal lexical error; fragment is empty
};

ParsedUnit parse_unit(const SourceUnit& source);

struct ParseOptions {
  std::vector<std::string> extensions{".java"};
  bool parallel = true;
};

struct ProjectParse {
  CodeModel model;
  std::vector<SourceUnit> units;  // sorted by path
  std::vector<ParseDiagnostic> diagnostics;
};

/// Throws IoError when `root` is not a readable directory. Per-file problems
/// become diagnostics.
ProjectParse parse_project(const std::filesystem::path& root, std::string project_name,
                           const ParseOptions& options = {});

/// Per-unit parsing kernels. Both produce identical results; the serial one
/// is the reference the parallel one is tested against.
std::vector<ParsedUnit> parse_units_serial(std::span<const SourceUnit> units);
std::vector<ParsedUnit> parse_units_parallel(std::span<const SourceUnit> units);

/// Deterministic merge of per-unit fragments (given in unit order). Also sets
/// each unit's package_name. Duplicate classes are dropped with a warning.
CodeModel merge_fragments(std::string project_name, std::span<ParsedUnit> parsed,
                          std::span<SourceUnit> units,
                          std::vector<ParseDiagnostic>& diagnostics);

}  // namespace ooscan
