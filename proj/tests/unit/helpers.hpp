#pragma once

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ooscan/parser.hpp"

namespace ooscan {

inline std::ostream& operator<<(std::ostream& o, const TypedName& t) {
  return o << "{" << t.name << " : " << t.type << "}";
}
inline std::ostream& operator<<(std::ostream& o, const AccessRecord& a) {
  return o << "{" << a.name << " : " << a.type << " | " << a.how_used << "}";
}
inline std::ostream& operator<<(std::ostream& o, const InvocationRecord& i) {
  return o << "{" << i.name << " " << i.arguments << "}";
}
inline std::ostream& operator<<(std::ostream& o, const AssignmentRecord& a) {
  return o << "{" << a.lhs << " <- " << a.rhs << "}";
}
inline std::ostream& operator<<(std::ostream& o, const AttributeDecl& a) {
  return o << "{" << a.name << " " << to_string(a.access) << " " << a.type << " " << a.is_static
           << "}";
}

}  // namespace ooscan

namespace doctest {

template <class T>
struct StringMaker<std::vector<T>> {
  static String convert(const std::vector<T>& v) {
    std::ostringstream o;
    o << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) o << ", ";
      if constexpr (std::is_same_v<T, std::string>) {
        o << '"' << v[i] << '"';
      } else if constexpr (requires { o << v[i]; }) {
        o << v[i];
      } else {
        o << "?";
      }
    }
    o << "]";
    return o.str().c_str();
  }
};

}  // namespace doctest

namespace ooscan::testing {

inline std::filesystem::path source_dir() { return OOSCAN_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) {
  return source_dir() / "tests" / "fixtures" / name;
}
inline std::filesystem::path golden(const std::string& name) {
  return source_dir() / "tests" / "golden" / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses a single in-memory compilation unit.
inline ParsedUnit parse_text(const std::string& text, const std::string& path = "T.java") {
  return parse_unit(make_source_unit(path, text));
}

inline const ClassDecl& only_class(const ParsedUnit& u) { return u.fragment.packages.at(0).classes.at(0); }

inline const MethodDecl& method_named(const ClassDecl& c, const std::string& name) {
  for (const auto& m : c.methods) {
    if (m.name == name) return m;
  }
  throw std::runtime_error("no method " + name);
}

}  // namespace ooscan::testing
