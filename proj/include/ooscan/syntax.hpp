#pragma once

// Syntax tree produced by the recursive-descent parser. Declarations get
// dedicated structs; statements and expressions share one tagged node type
// whose child layout depends on the kind (see NodeKind).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ooscan/lexer.hpp"
#include "ooscan/model.hpp"

namespace ooscan::syntax {

using TokenIndex = std::uint32_t;

/// Half-open token range [first, end).
struct TokenRange {
  TokenIndex first = 0;
  TokenIndex end = 0;

  bool empty() const { return end <= first; }
};

struct TypeDecl;

enum class NodeKind {
  // statements
  Block,         // children: statements
  LocalVar,      // text: base type; children: Declarator
  Declarator,    // text: name; type: full type; children: [initializer]
  ExprStmt,      // children: [expr]
  If,            // children: [cond, then, else?]; header: cond
  While,         // children: [cond, body]; header: cond
  DoWhile,       // children: [body, cond]; header: cond
  For,           // children: [init ExprList|LocalVar, cond|Empty, updates ExprList, body]
  ForEach,       // children: [LocalVar, iterable, body]
  Return,        // children: [expr?]
  Throw,         // children: [expr]
  Yield,         // children: [expr]
  Break,
  Continue,
  Empty,
  Switch,        // children: [selector, SwitchCase...]; header: selector
  SwitchCase,    // children: [labels ExprList, statements...]; header: labels
  Try,           // children: [resources ExprList, block, Catch..., Finally?]
  Catch,         // children: [Declarator, block]
  Finally,       // children: [block]
  Synchronized,  // children: [lock, block]; header: lock
  Labeled,       // text: label; children: [statement]
  Assert,        // children: [cond, message?]
  LocalClass,    // decl: the class
  ExprList,      // children: expressions (or LocalVar for resources)
  // expressions
  Name,             // text: identifier
  FieldAccess,      // text: field; target
  MethodCall,       // text: method; target?; children: args; header: argument tokens
  ExplicitCtorCall, // text: "this" | "super"; children: args; header: argument tokens
  New,              // text: simple type name; type: full type; children: args; decl: anonymous body?
  NewArray,         // type; children: dimension exprs, [ArrayInit]
  ArrayInit,        // children: elements
  ArrayAccess,      // children: [array, index]
  Assign,           // text: operator; children: [lhs, rhs]
  Binary,           // text: operator; children: [lhs, rhs]
  Unary,            // text: operator; children: [operand]
  Postfix,          // text: operator; children: [operand]
  Conditional,      // children: [cond, then, else]
  Cast,             // type; children: [expr]
  InstanceOf,       // type; text: binding name or empty; children: [expr]
  Lambda,           // children: Declarator params..., body
  MethodRef,        // text: member; target
  Literal,
  This,
  Super,
  ClassLit,         // type
  Paren,            // children: [expr]
  SwitchExpr,       // as Switch
};

struct Node {
  NodeKind kind = NodeKind::Empty;
  TokenRange range;
  TokenRange header;
  TokenIndex name_token = 0;
  std::string text;
  std::string type;
  std::unique_ptr<Node> target;
  std::vector<std::unique_ptr<Node>> children;
  std::unique_ptr<TypeDecl> decl;

  Node() = default;
  Node(NodeKind k) : kind(k) {}
  ~Node();
  Node(Node&&) noexcept;
  Node& operator=(Node&&) noexcept;
};

using NodePtr = std::unique_ptr<Node>;

struct Modifiers {
  std::optional<AccessLevel> access;
  bool is_static = false;
  bool is_abstract = false;
  bool is_default = false;  // interface default method
  TokenIndex first = 0;     // first token, annotations included
};

struct Variable {
  std::string name;
  std::string type;
  TokenIndex name_token = 0;
  NodePtr init;
};

struct FieldSyntax {
  Modifiers mods;
  std::vector<Variable> vars;
  TokenRange range;
};

struct MethodSyntax {
  Modifiers mods;
  bool is_constructor = false;
  std::string name;
  std::string return_type;
  std::vector<Variable> params;
  std::vector<std::string> throws;
  NodePtr body;  // null for abstract/native methods
  TokenRange range;
  TokenIndex name_token = 0;
};

struct InitializerSyntax {
  bool is_static = false;
  NodePtr body;
  TokenRange range;
};

struct EnumConstantSyntax {
  std::string name;
  TokenIndex name_token = 0;
  std::vector<NodePtr> args;
  std::unique_ptr<TypeDecl> body;
  TokenRange range;
};

enum class TypeKind { Class, Interface, Enum, Annotation, Record };

using Member = std::variant<FieldSyntax, MethodSyntax, InitializerSyntax, EnumConstantSyntax,
                            std::unique_ptr<TypeDecl>>;

struct TypeDecl {
  TypeKind kind = TypeKind::Class;
  Modifiers mods;
  std::string name;  // empty for anonymous class bodies
  std::optional<std::string> extends;
  std::vector<std::string> implements;  // interfaces: the extends list
  std::vector<Variable> record_components;
  std::vector<Member> members;
  TokenRange range;
  TokenIndex name_token = 0;
};

struct SyntaxError {
  TokenIndex token = 0;
  std::string message;
};

struct CompilationUnit {
  std::optional<std::string> package_name;
  std::vector<std::unique_ptr<TypeDecl>> types;
  std::vector<SyntaxError> errors;  // recovered errors
};

/// Parses a lexed unit. Errors inside a member skip that member; errors in a
/// type header skip to the next top-level declaration.
CompilationUnit parse(const LexResult& lexed);

}  // namespace ooscan::syntax
