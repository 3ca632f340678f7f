#include "ooscan/source.hpp"

#include <cstdint>

#include "ooscan/lexer.hpp"

namespace ooscan {

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

std::string ParseDiagnostic::format() const {
  return file_path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
         std::string(to_string(severity)) + ": " + message;
}

std::string decode_utf8_lossy(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) {
      out += static_cast<char>(c);
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      min = 0x10000;
    } else {
      out += kReplacement;
      ++i;
      continue;
    }
    bool ok = i + len <= bytes.size();
    std::uint32_t cp = c & (0xFF >> (len + 1));
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (cc & 0x3F);
      }
    }
    ok = ok && cp >= min && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    if (ok) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      out += kReplacement;
      ++i;
    }
  }
  return out;
}

SourceUnit make_source_unit(std::string file_path, std::string_view bytes) {
  SourceUnit unit;
  unit.file_path = std::move(file_path);
  auto decoded = decode_utf8_lossy(bytes);
  unit.content.reserve(decoded.size());
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    if (decoded[i] == '\r') {
      unit.content += '\n';
      if (i + 1 < decoded.size() && decoded[i + 1] == '\n') ++i;
    } else {
      unit.content += decoded[i];
    }
  }
  const auto lexed = lex(unit.content);
  unit.line_count_total = lexed.line_count_total;
  unit.line_count_code = lexed.line_count_code;
  return unit;
}

}  // namespace ooscan
