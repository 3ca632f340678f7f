#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ooscan {

/// Unreadable input, unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sink failed part-way; bytes_written is how much reached it.
class WriteError : public IoError {
 public:
  WriteError(const std::string& what, std::size_t bytes_written)
      : IoError(what), bytes_written_(bytes_written) {}
  std::size_t bytes_written() const { return bytes_written_; }

 private:
  std::size_t bytes_written_;
};

/// Malformed XML, schema violation or invalid model. `path` is the element
/// path ("Project/Packages/Package[2]/..."), `line` is 1-based or 0.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& message, std::string path = {}, std::size_t line = 0)
      : std::runtime_error(format(message, path, line)), path_(std::move(path)), line_(line) {}
  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& message, const std::string& path,
                            std::size_t line) {
    std::string out;
    if (line) out += "line " + std::to_string(line) + ": ";
    if (!path.empty()) out += path + ": ";
    return out + message;
  }
  std::string path_;
  std::size_t line_;
};

}  // namespace ooscan
