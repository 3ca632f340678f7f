#pragma once

// Code-file XML: writer and validating reader.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ooscan/errors.hpp"
#include "ooscan/model.hpp"

namespace ooscan {

inline constexpr std::string_view kDefaultAttribution = "Generated by ooscan";

struct WriteOptions {
  std::string attribution{kDefaultAttribution};  // text of the leading comment
};

/// The full document. Byte-identical for equal models.
std::string code_file_text(const CodeModel& model, const WriteOptions& options = {});

/// Writes the document to `out`; returns the byte count. Throws WriteError.
std::size_t write_code_file(const CodeModel& model, std::ostream& out,
                            const WriteOptions& options = {});

/// Parses and validates a code file. Accepts `AttributeAccess` as an alias of
/// `Access` and tolerates missing container elements. Throws SchemaError.
CodeModel read_code_text(std::string_view text);
CodeModel read_code_file(std::istream& in);
/// Throws IoError when the file cannot be read.
CodeModel read_code_file(const std::filesystem::path& path);

/// Chunked write that reports how many bytes made it. Throws WriteError.
std::size_t write_all(std::ostream& out, std::string_view bytes);

/// Writes `bytes` to `path`, replacing it. Throws WriteError / IoError.
std::size_t write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace ooscan
