#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ooscan {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

struct ParseDiagnostic {
  std::string file_path;
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
  std::string message;
  Severity severity = Severity::Error;

  /// "path:line:col: error: message"
  std::string format() const;
};

struct SourceUnit {
  std::string file_path;
  std::string content;
  std::size_t line_count_total = 0;
  std::size_t line_count_code = 0;  // lines with at least one non-comment token
  std::string package_name;         // filled in by parse_project; empty if skipped
};

/// Replaces ill-formed UTF-8 sequences with U+FFFD.
std::string decode_utf8_lossy(std::string_view bytes);

/// Builds a unit from raw bytes: decodes, normalizes CRLF/CR to LF and counts
/// lines.
SourceUnit make_source_unit(std::string file_path, std::string_view bytes);

}  // namespace ooscan
