#include "ooscan/model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ooscan {

std::string_view to_string(AccessLevel level) {
  switch (level) {
    case AccessLevel::Public: return "public";
    case AccessLevel::Protected: return "protected";
    case AccessLevel::Private: return "private";
    case AccessLevel::Default: return "default";
  }
  return "default";
}

std::optional<AccessLevel> parse_access_level(std::string_view text) {
  if (text == "public") return AccessLevel::Public;
  if (text == "protected") return AccessLevel::Protected;
  if (text == "private") return AccessLevel::Private;
  if (text == "default") return AccessLevel::Default;
  return std::nullopt;
}

std::string_view to_string(InheritanceKind kind) {
  return kind == InheritanceKind::Extends ? "extends" : "implements";
}

std::string MethodDecl::signature() const {
  std::string out = name;
  out += '(';
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i) out += ',';
    out += parameters[i].type;
  }
  out += ')';
  return out;
}

std::string qualified_name(const PackageDecl& pkg, const ClassDecl& cls) {
  return pkg.name + "." + cls.name;
}

const ClassDecl* lookup_class(const CodeModel& model, std::string_view name) {
  if (name.empty()) return nullptr;
  // Qualified lookup first: split at each dot from the right, since nested
  // class names contain dots themselves.
  for (const auto& pkg : model.packages) {
    if (name.size() <= pkg.name.size() + 1) continue;
    if (name.substr(0, pkg.name.size()) != pkg.name || name[pkg.name.size()] != '.') continue;
    const auto simple = name.substr(pkg.name.size() + 1);
    for (const auto& cls : pkg.classes) {
      if (cls.name == simple) return &cls;
    }
  }
  const ClassDecl* found = nullptr;
  for (const auto& pkg : model.packages) {
    for (const auto& cls : pkg.classes) {
      if (cls.name != name) continue;
      if (found) return nullptr;  // ambiguous
      found = &cls;
    }
  }
  return found;
}

namespace {

void append_edges(const PackageDecl& pkg, std::vector<InheritanceEdge>& out) {
  for (const auto& cls : pkg.classes) {
    const auto sub = qualified_name(pkg, cls);
    if (cls.has_explicit_superclass()) {
      out.push_back({sub, cls.superclass, InheritanceKind::Extends});
    }
    for (const auto& iface : cls.super_interfaces) {
      if (iface == kImplicitSuperclass) continue;
      out.push_back({sub, iface, InheritanceKind::Implements});
    }
  }
}

void sort_edges(std::vector<InheritanceEdge>& edges) {
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.subclass, a.kind, a.supertype) < std::tie(b.subclass, b.kind, b.supertype);
  });
}

}  // namespace

std::vector<InheritanceEdge> inheritance_edges(const PackageDecl& pkg) {
  std::vector<InheritanceEdge> edges;
  append_edges(pkg, edges);
  sort_edges(edges);
  return edges;
}

std::vector<InheritanceEdge> inheritance_edges(const CodeModel& model) {
  std::vector<InheritanceEdge> edges;
  for (const auto& pkg : model.packages) append_edges(pkg, edges);
  sort_edges(edges);
  return edges;
}

void normalize(CodeModel& model) {
  std::stable_sort(model.packages.begin(), model.packages.end(),
                   [](const auto& a, const auto& b) { return a.name < b.name; });
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto start = [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
  };
  if (!start(static_cast<unsigned char>(text.front()))) return false;
  return std::all_of(text.begin() + 1, text.end(), [&](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return start(c) || (c >= '0' && c <= '9');
  });
}

namespace {

bool valid_package_name(std::string_view name) {
  if (name == kDefaultPackage) return true;
  std::size_t begin = 0;
  while (true) {
    const auto dot = name.find('.', begin);
    const auto segment = name.substr(begin, dot == std::string_view::npos ? name.npos : dot - begin);
    if (!is_identifier(segment)) return false;
    if (dot == std::string_view::npos) return true;
    begin = dot + 1;
  }
}

}  // namespace

std::vector<std::string> validate(const CodeModel& model) {
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };

  std::set<std::string> package_names;
  const std::string* previous = nullptr;
  for (const auto& pkg : model.packages) {
    if (!valid_package_name(pkg.name)) fail("invalid package name '" + pkg.name + "'");
    if (!package_names.insert(pkg.name).second) fail("duplicate package '" + pkg.name + "'");
    if (previous && *previous > pkg.name) fail("packages out of order at '" + pkg.name + "'");
    previous = &pkg.name;

    std::set<std::string> class_names;
    for (const auto& cls : pkg.classes) {
      const auto where = pkg.name + "." + cls.name;
      if (cls.name.empty()) fail("empty class name in package '" + pkg.name + "'");
      if (!class_names.insert(cls.name).second) fail("duplicate class '" + where + "'");
      if (cls.is_interface && cls.has_explicit_superclass()) {
        fail("interface '" + where + "' has a superclass");
      }
      if (cls.superclass.empty()) fail("empty superclass in '" + where + "'");
      for (const auto& c : cls.comments) {
        if (c.empty()) fail("empty comment in '" + where + "'");
      }

      std::set<std::string> attr_names;
      for (const auto& attr : cls.attributes) {
        if (attr.name.empty() || attr.type.empty()) fail("incomplete attribute in '" + where + "'");
        if (!attr_names.insert(attr.name).second) {
          fail("duplicate attribute '" + attr.name + "' in '" + where + "'");
        }
      }

      std::set<std::string> signatures;
      for (const auto& m : cls.methods) {
        const auto mwhere = where + "." + m.signature();
        if (m.name.empty()) fail("empty method name in '" + where + "'");
        if (!signatures.insert(m.signature()).second) fail("duplicate method '" + mwhere + "'");
        std::set<std::string> params;
        for (const auto& p : m.parameters) {
          if (p.name.empty() || p.type.empty()) fail("incomplete parameter in '" + mwhere + "'");
          if (!params.insert(p.name).second) {
            fail("duplicate parameter '" + p.name + "' in '" + mwhere + "'");
          }
        }
        for (const auto& c : m.comments) {
          if (c.empty()) fail("empty comment in '" + mwhere + "'");
        }
        for (const auto& a : m.accesses) {
          if (a.name.empty() || a.how_used.empty()) fail("incomplete access in '" + mwhere + "'");
        }
        for (const auto& i : m.invocations) {
          if (i.name.empty() || i.arguments.size() < 2 || i.arguments.front() != '[' ||
              i.arguments.back() != ']') {
            fail("malformed invocation in '" + mwhere + "'");
          }
        }
        for (const auto& a : m.assignments) {
          if (a.lhs.empty() || a.rhs.empty()) fail("incomplete assignment in '" + mwhere + "'");
        }
      }
    }
  }
  return problems;
}

}  // namespace ooscan
