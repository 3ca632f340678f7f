#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "ooscan/parser.hpp"

namespace ooscan {

namespace fs = std::filesystem;

namespace {

bool has_extension(const fs::path& p, const std::vector<std::string>& extensions) {
  const auto ext = p.extension().string();
  return std::find(extensions.begin(), extensions.end(), ext) != extensions.end();
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<ParsedUnit> parse_units_serial(std::span<const SourceUnit> units) {
  std::vector<ParsedUnit> out;
  out.reserve(units.size());
  for (const auto& u : units) out.push_back(parse_unit(u));
  return out;
}

std::vector<ParsedUnit> parse_units_parallel(std::span<const SourceUnit> units) {
  std::vector<ParsedUnit> out(units.size());
  const auto n = static_cast<long>(units.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = parse_unit(units[i]);
  return out;
}

CodeModel merge_fragments(std::string project_name, std::span<ParsedUnit> parsed,
                          std::span<SourceUnit> units,
                          std::vector<ParseDiagnostic>& diagnostics) {
  std::map<std::string, PackageDecl> packages;
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    auto& unit = parsed[i];
    diagnostics.insert(diagnostics.end(), std::make_move_iterator(unit.diagnostics.begin()),
                       std::make_move_iterator(unit.diagnostics.end()));
    unit.diagnostics.clear();
    for (auto& frag : unit.fragment.packages) {
      if (i < units.size()) units[i].package_name = frag.name;
      auto& pkg = packages[frag.name];
      pkg.name = frag.name;
      for (auto& cls : frag.classes) {
        const bool duplicate =
            std::any_of(pkg.classes.begin(), pkg.classes.end(),
                        [&](const ClassDecl& c) { return c.name == cls.name; });
        if (duplicate) {
          diagnostics.push_back({i < units.size() ? units[i].file_path : std::string(), 1, 1,
                                 "duplicate class '" + frag.name + "." + cls.name + "' ignored",
                                 Severity::Warning});
          continue;
        }
        pkg.classes.push_back(std::move(cls));
      }
    }
  }
  CodeModel model;
  model.project_name = std::move(project_name);
  for (auto& [name, pkg] : packages) model.packages.push_back(std::move(pkg));
  return model;
}

ProjectParse parse_project(const fs::path& root, std::string project_name,
                           const ParseOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw IoError("cannot read directory " + root.string() + ": " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file(ec)) continue;
    const auto& p = entry.path();
    if (!has_extension(p, options.extensions)) continue;
    if (p.filename() == "module-info.java") continue;
    files.push_back(p);
  }
  std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
    return a.lexically_relative(root).generic_string() < b.lexically_relative(root).generic_string();
  });

  ProjectParse result;
  result.units.reserve(files.size());
  for (const auto& p : files) {
    std::string bytes;
    try {
      bytes = read_bytes(p);
    } catch (const IoError& e) {
      result.diagnostics.push_back({p.string(), 1, 1, e.what(), Severity::Error});
      continue;
    }
    result.units.push_back(make_source_unit(p.lexically_relative(root).generic_string(), bytes));
  }

  auto parsed = options.parallel ? parse_units_parallel(result.units)
                                 : parse_units_serial(result.units);
  result.model = merge_fragments(std::move(project_name), parsed, result.units, result.diagnostics);
  normalize(result.model);
  return result;
}

}  // namespace ooscan
