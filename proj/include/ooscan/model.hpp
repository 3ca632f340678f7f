#pragma once

// In-memory code model: project > packages > classes > members, plus the
// per-method body records (locals, accesses, invocations, assignments).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ooscan {

enum class AccessLevel { Public, Protected, Private, Default };

std::string_view to_string(AccessLevel level);
std::optional<AccessLevel> parse_access_level(std::string_view text);

/// Name of the implicit superclass of classes without an explicit extends.
inline constexpr std::string_view kImplicitSuperclass = "Object";

struct TypedName {
  std::string name;
  std::string type;

  friend bool operator==(const TypedName&, const TypedName&) = default;
};

using Parameter = TypedName;
using LocalVariable = TypedName;

struct AccessRecord {
  std::string name;
  std::string type;      // declared type, or "unknown"
  std::string how_used;  // enclosing statement text

  friend bool operator==(const AccessRecord&, const AccessRecord&) = default;
};

struct InvocationRecord {
  std::string name;
  std::string arguments;  // "[...]"

  friend bool operator==(const InvocationRecord&, const InvocationRecord&) = default;
};

struct AssignmentRecord {
  std::string lhs;
  std::string rhs;

  friend bool operator==(const AssignmentRecord&, const AssignmentRecord&) = default;
};

struct MethodDecl {
  std::string name;
  AccessLevel access = AccessLevel::Default;
  std::string return_type = "void";
  bool is_static = false;
  std::vector<Parameter> parameters;
  std::vector<std::string> comments;
  std::vector<LocalVariable> local_variables;
  std::vector<AccessRecord> accesses;
  std::vector<InvocationRecord> invocations;
  std::vector<AssignmentRecord> assignments;
  std::vector<std::string> exceptions;

  /// "name(T1,T2)"; identity of an overload within its class.
  std::string signature() const;

  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct AttributeDecl {
  std::string name;
  AccessLevel access = AccessLevel::Default;
  std::string type;
  bool is_static = false;

  friend bool operator==(const AttributeDecl&, const AttributeDecl&) = default;
};

struct ClassDecl {
  std::string name;  // nested classes are "Outer.Inner"
  AccessLevel access = AccessLevel::Default;
  bool is_interface = false;
  std::string superclass{kImplicitSuperclass};
  std::vector<std::string> super_interfaces;
  std::vector<std::string> comments;
  std::vector<AttributeDecl> attributes;
  std::vector<MethodDecl> methods;

  bool has_explicit_superclass() const { return superclass != kImplicitSuperclass; }

  friend bool operator==(const ClassDecl&, const ClassDecl&) = default;
};

struct PackageDecl {
  std::string name;
  std::vector<ClassDecl> classes;

  friend bool operator==(const PackageDecl&, const PackageDecl&) = default;
};

/// Package name used for compilation units without a package declaration.
inline constexpr std::string_view kDefaultPackage = "default";

struct CodeModel {
  std::string project_name;
  std::vector<PackageDecl> packages;  // sorted by name

  friend bool operator==(const CodeModel&, const CodeModel&) = default;
};

enum class InheritanceKind { Extends, Implements };

std::string_view to_string(InheritanceKind kind);

struct InheritanceEdge {
  std::string subclass;   // qualified: "pkg.Class"
  std::string supertype;  // as written in the source
  InheritanceKind kind = InheritanceKind::Extends;

  friend bool operator==(const InheritanceEdge&, const InheritanceEdge&) = default;
};

std::string qualified_name(const PackageDecl& pkg, const ClassDecl& cls);

/// Resolves "pkg.dotted.Class" or a bare class name. A bare name that
/// matches classes in more than one package resolves to nothing.
const ClassDecl* lookup_class(const CodeModel& model, std::string_view name);

/// Explicit extends and every super-interface; the implicit Object
/// superclass never yields an edge. Sorted by (subclass, kind, supertype).
std::vector<InheritanceEdge> inheritance_edges(const CodeModel& model);
std::vector<InheritanceEdge> inheritance_edges(const PackageDecl& pkg);

/// Sorts packages by name; stable, so class and member order is kept.
void normalize(CodeModel& model);

/// Checks the structural invariants. Returns one message per violation.
std::vector<std::string> validate(const CodeModel& model);

bool is_identifier(std::string_view text);

}  // namespace ooscan
