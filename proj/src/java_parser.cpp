#include <string_view>
#include <unordered_set>

#include "ooscan/syntax.hpp"

namespace ooscan::syntax {

Node::~Node() = default;
Node::Node(Node&&) noexcept = default;
Node& Node::operator=(Node&&) noexcept = default;

namespace {

struct ParseFail {
  TokenIndex token = 0;
  std::string message;
};

bool is_primitive(std::string_view word) {
  static const std::unordered_set<std::string_view> kPrimitives = {
      "boolean", "byte", "char", "short", "int", "long", "float", "double"};
  return kPrimitives.contains(word);
}

bool is_assign_op(const Token& t) {
  static const std::unordered_set<std::string_view> kOps = {
      "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};
  return t.kind == TokenKind::Operator && kOps.contains(t.text);
}

bool is_literal(TokenKind k) {
  return k == TokenKind::IntegerLiteral || k == TokenKind::FloatingLiteral ||
         k == TokenKind::CharLiteral || k == TokenKind::StringLiteral || k == TokenKind::TextBlock;
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

class Parser {
 public:
  explicit Parser(const LexResult& lexed) : toks_(lexed.tokens) {}

  CompilationUnit run() {
    CompilationUnit unit;
    try {
      package_and_imports(unit);
    } catch (const ParseFail& f) {
      errors_.push_back({f.token, f.message});
      recover_top();
    }
    while (!at_end()) {
      if (accept(";")) continue;
      const auto start = pos_;
      try {
        auto mods = modifiers(false);
        unit.types.push_back(type_declaration(mods));
      } catch (const ParseFail& f) {
        errors_.push_back({f.token, f.message});
        pos_ = start;
        recover_top();
      }
    }
    unit.errors = std::move(errors_);
    return unit;
  }

 private:
  // -- token helpers -------------------------------------------------------

  const Token& tok(std::size_t ahead = 0) const {
    const auto i = std::min<std::size_t>(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(std::string_view op, std::size_t ahead = 0) const { return tok(ahead).is(op); }
  bool at_ident(std::size_t ahead = 0) const { return tok(ahead).kind == TokenKind::Identifier; }
  bool at_ident(std::string_view word, std::size_t ahead = 0) const {
    return at_ident(ahead) && tok(ahead).text == word;
  }
  bool at_end() const { return tok().kind == TokenKind::End; }
  bool accept(std::string_view op) {
    if (!at(op)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(std::string message) const {
    std::string found = at_end() ? "end of file" : "'" + std::string(tok().text) + "'";
    throw ParseFail{pos_, std::move(message) + ", found " + found};
  }
  void expect(std::string_view op) {
    if (!accept(op)) fail("expected '" + std::string(op) + "'");
  }
  std::string ident() {
    if (!at_ident()) fail("expected identifier");
    return std::string(toks_[pos_++].text);
  }
  TokenIndex match_of(TokenIndex i) const {
    const auto m = toks_[i].match;
    if (m < 0) throw ParseFail{i, "unbalanced bracket"};
    return static_cast<TokenIndex>(m);
  }
  bool adjacent(std::size_t ahead) const {
    return tok(ahead).end_offset() == tok(ahead + 1).offset;
  }

  NodePtr make(NodeKind kind, TokenIndex first) const {
    auto n = std::make_unique<Node>(kind);
    n->range.first = first;
    return n;
  }
  NodePtr make(NodeKind kind) const { return make(kind, pos_); }
  NodePtr done(NodePtr n) const {
    n->range.end = pos_;
    return n;
  }

  // -- recovery ------------------------------------------------------------

  void recover_top() {
    const auto start = pos_;
    while (!at_end()) {
      if (pos_ > start && (at("class") || at("interface") || at("enum"))) return;
      if (at("{")) {
        pos_ = match_of(pos_) + 1;
        return;
      }
      if (at("(") || at("[")) {
        pos_ = match_of(pos_) + 1;
        continue;
      }
      if (accept(";")) return;
      ++pos_;
    }
  }

  void skip_member() {
    while (!at_end() && !at("}")) {
      if (accept(";")) return;
      if (at("{")) {
        pos_ = match_of(pos_) + 1;
        accept(";");
        return;
      }
      if (at("(") || at("[")) {
        pos_ = match_of(pos_) + 1;
        continue;
      }
      ++pos_;
    }
  }

  // -- declarations ----------------------------------------------------------

  std::string qualified_name() {
    std::string name = ident();
    while (at(".") && at_ident(1)) {
      ++pos_;
      name += '.';
      name += ident();
    }
    return name;
  }

  void package_and_imports(CompilationUnit& unit) {
    const auto save = pos_;
    while (at("@") && !at("interface", 1)) skip_annotation();
    if (accept("package")) {
      unit.package_name = qualified_name();
      expect(";");
    } else {
      pos_ = save;
    }
    while (at("import") || at(";")) {
      while (!at_end() && !accept(";")) ++pos_;
    }
  }

  void skip_annotation() {
    expect("@");
    qualified_name();
    if (at("(")) pos_ = match_of(pos_) + 1;
  }

  void skip_type_params() {
    expect("<");
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unterminated type parameters");
      if (at("<")) ++depth;
      if (at(">")) --depth;
      ++pos_;
    }
  }

  bool at_type_decl_keyword() const {
    return at("class") || at("interface") || at("enum") || (at("@") && at("interface", 1)) ||
           (at_ident("record") && at_ident(1) && (at("(", 2) || at("<", 2)));
  }

  Modifiers modifiers(bool in_class_body) {
    Modifiers m;
    m.first = pos_;
    while (true) {
      if (at("@") && !at("interface", 1)) {
        skip_annotation();
        continue;
      }
      const auto& t = tok();
      if (t.kind == TokenKind::Keyword) {
        if (t.text == "public") {
          m.access = AccessLevel::Public;
        } else if (t.text == "protected") {
          m.access = AccessLevel::Protected;
        } else if (t.text == "private") {
          m.access = AccessLevel::Private;
        } else if (t.text == "static") {
          m.is_static = true;
        } else if (t.text == "abstract") {
          m.is_abstract = true;
        } else if (t.text == "default" && in_class_body && !at(":", 1) && !at("->", 1)) {
          m.is_default = true;
        } else if (t.text != "final" && t.text != "native" && t.text != "synchronized" &&
                   t.text != "transient" && t.text != "volatile" && t.text != "strictfp") {
          break;
        }
        ++pos_;
        continue;
      }
      if (at_ident("sealed") && tok(1).kind == TokenKind::Keyword) {
        ++pos_;
        continue;
      }
      if (at_ident("non") && at("-", 1) && tok(2).text == "sealed") {
        pos_ += 3;
        continue;
      }
      break;
    }
    return m;
  }

  void type_args(std::string& out) {
    if (!at("<")) return;
    ++pos_;
    out += '<';
    if (accept(">")) {
      out += '>';
      return;
    }
    for (bool first = true;; first = false) {
      if (!first) out += ", ";
      while (at("@")) skip_annotation();
      if (accept("?")) {
        out += '?';
        if (accept("extends")) {
          out += " extends " + type();
        } else if (accept("super")) {
          out += " super " + type();
        }
      } else {
        out += type();
      }
      if (!accept(",")) break;
    }
    if (!accept(">")) fail("expected '>'");
    out += '>';
  }

  std::string type() {
    while (at("@")) skip_annotation();
    std::string out;
    const auto& t = tok();
    if (t.kind == TokenKind::Keyword && (is_primitive(t.text) || t.text == "void")) {
      out = std::string(t.text);
      ++pos_;
    } else {
      out = ident();
      type_args(out);
      while (at(".") && (at_ident(1) || at("@", 1))) {
        ++pos_;
        while (at("@")) skip_annotation();
        out += '.';
        out += ident();
        type_args(out);
      }
    }
    dims(out);
    return out;
  }

  void dims(std::string& out) {
    while (true) {
      const auto save = pos_;
      while (at("@")) skip_annotation();
      if (at("[") && at("]", 1)) {
        pos_ += 2;
        out += "[]";
      } else {
        pos_ = save;
        return;
      }
    }
  }

  std::unique_ptr<TypeDecl> type_declaration(const Modifiers& mods) {
    auto d = std::make_unique<TypeDecl>();
    d->mods = mods;
    d->range.first = mods.first;
    if (accept("class")) {
      d->kind = TypeKind::Class;
    } else if (accept("interface")) {
      d->kind = TypeKind::Interface;
    } else if (accept("enum")) {
      d->kind = TypeKind::Enum;
    } else if (at("@") && at("interface", 1)) {
      pos_ += 2;
      d->kind = TypeKind::Annotation;
    } else if (at_ident("record") && at_ident(1)) {
      ++pos_;
      d->kind = TypeKind::Record;
    } else {
      fail("expected type declaration");
    }
    d->name_token = pos_;
    d->name = ident();
    if (at("<")) skip_type_params();
    if (d->kind == TypeKind::Record) {
      expect("(");
      while (!at(")")) {
        modifiers(false);
        Variable v;
        v.type = type();
        if (accept("...")) v.type += "...";
        v.name_token = pos_;
        v.name = ident();
        d->record_components.push_back(std::move(v));
        if (!accept(",")) break;
      }
      expect(")");
    }
    if (accept("extends")) {
      if (d->kind == TypeKind::Interface) {
        type_list(d->implements);
      } else {
        d->extends = type();
      }
    }
    if (accept("implements")) type_list(d->implements);
    if (at_ident("permits")) {
      ++pos_;
      std::vector<std::string> ignored;
      type_list(ignored);
    }
    class_body(*d);
    d->range.end = pos_;
    return d;
  }

  void type_list(std::vector<std::string>& out) {
    do {
      out.push_back(type());
    } while (accept(","));
  }

  void class_body(TypeDecl& d) {
    expect("{");
    if (d.kind == TypeKind::Enum) enum_constants(d);
    while (!at("}")) {
      if (at_end()) fail("expected '}'");
      const auto start = pos_;
      try {
        member(d);
      } catch (const ParseFail& f) {
        errors_.push_back({f.token, f.message});
        pos_ = start;
        skip_member();
        if (pos_ == start) ++pos_;
      }
    }
    expect("}");
  }

  void enum_constants(TypeDecl& d) {
    while (!at(";") && !at("}")) {
      EnumConstantSyntax c;
      c.range.first = pos_;
      while (at("@")) skip_annotation();
      c.name_token = pos_;
      c.name = ident();
      if (at("(")) {
        Node holder;
        arguments(holder);
        c.args = std::move(holder.children);
      }
      if (at("{")) {
        c.body = std::make_unique<TypeDecl>();
        c.body->range.first = pos_;
        class_body(*c.body);
        c.body->range.end = pos_;
      }
      c.range.end = pos_;
      d.members.emplace_back(std::move(c));
      if (!accept(",")) break;
    }
    accept(";");
  }

  void member(TypeDecl& d) {
    if (accept(";")) return;
    if (at("{") || (at("static") && at("{", 1))) {
      InitializerSyntax init;
      init.range.first = pos_;
      init.is_static = accept("static");
      init.body = block();
      init.range.end = pos_;
      d.members.emplace_back(std::move(init));
      return;
    }
    const auto mods = modifiers(true);
    if (at_type_decl_keyword()) {
      d.members.emplace_back(type_declaration(mods));
      return;
    }
    if (at("<")) skip_type_params();
    if (at_ident() && at("(", 1)) {
      d.members.emplace_back(method(mods, "void", true));
      return;
    }
    if (d.kind == TypeKind::Record && at_ident() && at("{", 1) && tok().text == d.name) {
      MethodSyntax m;  // compact canonical constructor
      m.mods = mods;
      m.range.first = mods.first;
      m.is_constructor = true;
      m.return_type = "void";
      m.name_token = pos_;
      m.name = ident();
      for (const auto& c : d.record_components) m.params.push_back({c.name, c.type, c.name_token, nullptr});
      m.body = block();
      m.range.end = pos_;
      d.members.emplace_back(std::move(m));
      return;
    }
    auto t = type();
    if (at_ident() && at("(", 1)) {
      d.members.emplace_back(method(mods, std::move(t), false));
      return;
    }
    FieldSyntax f;
    f.mods = mods;
    f.range.first = mods.first;
    do {
      Variable v;
      v.name_token = pos_;
      v.name = ident();
      v.type = t;
      dims(v.type);
      if (accept("=")) v.init = variable_initializer();
      f.vars.push_back(std::move(v));
    } while (accept(","));
    expect(";");
    f.range.end = pos_;
    d.members.emplace_back(std::move(f));
  }

  MethodSyntax method(const Modifiers& mods, std::string return_type, bool is_constructor) {
    MethodSyntax m;
    m.mods = mods;
    m.range.first = mods.first;
    m.is_constructor = is_constructor;
    m.return_type = std::move(return_type);
    m.name_token = pos_;
    m.name = ident();
    expect("(");
    while (!at(")")) {
      modifiers(false);
      auto t = type();
      if (accept("...")) t += "...";
      if (accept("this")) {  // receiver parameter
        if (!accept(",")) break;
        continue;
      }
      if (at_ident() && at(".", 1) && at("this", 2)) {
        pos_ += 3;
        if (!accept(",")) break;
        continue;
      }
      Variable v;
      v.name_token = pos_;
      v.name = ident();
      v.type = std::move(t);
      dims(v.type);
      m.params.push_back(std::move(v));
      if (!accept(",")) break;
    }
    expect(")");
    dims(m.return_type);
    if (accept("throws")) type_list(m.throws);
    if (at("{")) {
      m.body = block();
    } else if (accept("default")) {
      while (!at_end() && !at(";")) {
        if (at("(") || at("{") || at("[")) {
          pos_ = match_of(pos_) + 1;
        } else {
          ++pos_;
        }
      }
      expect(";");
    } else {
      expect(";");
    }
    m.range.end = pos_;
    return m;
  }

  NodePtr variable_initializer() { return at("{") ? array_init() : expression(); }

  NodePtr array_init() {
    auto n = make(NodeKind::ArrayInit);
    expect("{");
    while (!at("}")) {
      n->children.push_back(variable_initializer());
      if (!accept(",")) break;
    }
    expect("}");
    return done(std::move(n));
  }

  // -- statements ------------------------------------------------------------

  NodePtr block() {
    auto n = make(NodeKind::Block);
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("expected '}'");
      n->children.push_back(block_statement());
    }
    expect("}");
    return done(std::move(n));
  }

  bool is_local_class_decl() {
    const auto save = pos_;
    modifiers(false);
    const bool result = at_type_decl_keyword() && !at("@");
    pos_ = save;
    return result;
  }

  bool is_local_var_decl() {
    const auto save = pos_;
    bool result = false;
    while ((at("@") && !at("interface", 1)) || at("final")) {
      if (at("final")) {
        ++pos_;
      } else {
        try {
          skip_annotation();
        } catch (const ParseFail&) {
          pos_ = save;
          return false;
        }
      }
    }
    const auto& t = tok();
    if (t.kind == TokenKind::Identifier || (t.kind == TokenKind::Keyword && is_primitive(t.text))) {
      try {
        type();
        result = at_ident() && (at("=", 1) || at(";", 1) || at(",", 1) || at("[", 1) || at(":", 1));
      } catch (const ParseFail&) {
        result = false;
      }
    }
    pos_ = save;
    return result;
  }

  bool at_yield_statement() const {
    if (!at_ident("yield")) return false;
    static const std::unordered_set<std::string_view> kNotYield = {
        "=",  ".",  "[",  "+=", "-=",  "*=",   "/=", "%=", "&=",
        "|=", "^=", "<<=", ">>=", ">>>=", "->", "::", ";"};
    const auto& next = tok(1);
    return !(next.kind == TokenKind::Operator && kNotYield.contains(next.text));
  }

  NodePtr block_statement() {
    if (is_local_class_decl()) {
      auto n = make(NodeKind::LocalClass);
      const auto mods = modifiers(false);
      n->decl = type_declaration(mods);
      return done(std::move(n));
    }
    if (!at_yield_statement() && is_local_var_decl()) {
      auto n = local_var();
      expect(";");
      return done(std::move(n));
    }
    return statement();
  }

  NodePtr local_var() {
    auto n = make(NodeKind::LocalVar);
    while ((at("@") && !at("interface", 1)) || at("final")) {
      if (!accept("final")) skip_annotation();
    }
    n->text = type();
    do {
      auto d = make(NodeKind::Declarator);
      d->name_token = pos_;
      d->text = ident();
      d->type = n->text;
      dims(d->type);
      if (accept("=")) d->children.push_back(variable_initializer());
      n->children.push_back(done(std::move(d)));
    } while (accept(","));
    n->range.end = pos_;
    return n;
  }

  TokenRange paren_header() {
    if (!at("(")) fail("expected '('");
    return TokenRange{pos_ + 1, match_of(pos_)};
  }

  NodePtr paren_expression(Node& owner) {
    owner.header = paren_header();
    expect("(");
    auto e = expression();
    expect(")");
    return e;
  }

  NodePtr statement() {
    const auto start = pos_;
    if (at("{")) return block();
    if (accept(";")) return done(make(NodeKind::Empty, start));

    if (accept("if")) {
      auto n = make(NodeKind::If, start);
      n->children.push_back(paren_expression(*n));
      n->children.push_back(statement());
      if (accept("else")) n->children.push_back(statement());
      return done(std::move(n));
    }
    if (accept("while")) {
      auto n = make(NodeKind::While, start);
      n->children.push_back(paren_expression(*n));
      n->children.push_back(statement());
      return done(std::move(n));
    }
    if (accept("do")) {
      auto n = make(NodeKind::DoWhile, start);
      n->children.push_back(statement());
      expect("while");
      n->children.push_back(paren_expression(*n));
      expect(";");
      return done(std::move(n));
    }
    if (accept("for")) return for_statement(start);
    if (accept("try")) return try_statement(start);
    if (at("switch")) return switch_construct(NodeKind::Switch);
    if (accept("return")) {
      auto n = make(NodeKind::Return, start);
      if (!at(";")) n->children.push_back(expression());
      expect(";");
      return done(std::move(n));
    }
    if (accept("throw")) {
      auto n = make(NodeKind::Throw, start);
      n->children.push_back(expression());
      expect(";");
      return done(std::move(n));
    }
    if (at_yield_statement()) {
      ++pos_;
      auto n = make(NodeKind::Yield, start);
      n->children.push_back(expression());
      expect(";");
      return done(std::move(n));
    }
    if (accept("break") || accept("continue")) {
      auto n = make(toks_[start].text == "break" ? NodeKind::Break : NodeKind::Continue, start);
      if (at_ident()) ++pos_;
      expect(";");
      return done(std::move(n));
    }
    if (accept("synchronized")) {
      auto n = make(NodeKind::Synchronized, start);
      n->children.push_back(paren_expression(*n));
      n->children.push_back(block());
      return done(std::move(n));
    }
    if (accept("assert")) {
      auto n = make(NodeKind::Assert, start);
      n->children.push_back(expression());
      if (accept(":")) n->children.push_back(expression());
      expect(";");
      return done(std::move(n));
    }
    if (at_ident() && at(":", 1)) {
      auto n = make(NodeKind::Labeled, start);
      n->text = ident();
      ++pos_;
      n->children.push_back(statement());
      return done(std::move(n));
    }
    auto n = make(NodeKind::ExprStmt, start);
    n->children.push_back(expression());
    expect(";");
    return done(std::move(n));
  }

  NodePtr expression_list(TokenIndex first) {
    auto list = make(NodeKind::ExprList, first);
    if (!at(";") && !at(")")) {
      do {
        list->children.push_back(expression());
      } while (accept(","));
    }
    return done(std::move(list));
  }

  NodePtr for_statement(TokenIndex start) {
    const auto header = paren_header();
    expect("(");
    if (is_local_var_decl()) {
      auto var = local_var();
      if (accept(":")) {
        auto n = make(NodeKind::ForEach, start);
        n->header = header;
        n->children.push_back(std::move(var));
        n->children.push_back(expression());
        expect(")");
        n->children.push_back(statement());
        return done(std::move(n));
      }
      auto n = make(NodeKind::For, start);
      n->header = header;
      n->children.push_back(std::move(var));
      return for_rest(std::move(n));
    }
    auto n = make(NodeKind::For, start);
    n->header = header;
    n->children.push_back(expression_list(pos_));
    return for_rest(std::move(n));
  }

  NodePtr for_rest(NodePtr n) {
    expect(";");
    if (at(";")) {
      n->children.push_back(done(make(NodeKind::Empty)));
    } else {
      n->children.push_back(expression());
    }
    expect(";");
    n->children.push_back(expression_list(pos_));
    expect(")");
    n->children.push_back(statement());
    return done(std::move(n));
  }

  NodePtr try_statement(TokenIndex start) {
    auto n = make(NodeKind::Try, start);
    auto resources = make(NodeKind::ExprList);
    if (accept("(")) {
      while (!at(")")) {
        if (is_local_var_decl()) {
          resources->children.push_back(local_var());
        } else {
          resources->children.push_back(expression());
        }
        if (!accept(";")) break;
      }
      expect(")");
    }
    n->children.push_back(done(std::move(resources)));
    n->children.push_back(block());
    while (at("catch")) {
      auto c = make(NodeKind::Catch);
      ++pos_;
      expect("(");
      modifiers(false);
      auto param = make(NodeKind::Declarator);
      param->type = type();
      while (accept("|")) param->type += " | " + type();
      param->name_token = pos_;
      param->text = ident();
      c->children.push_back(done(std::move(param)));
      expect(")");
      c->children.push_back(block());
      n->children.push_back(done(std::move(c)));
    }
    if (at("finally")) {
      auto f = make(NodeKind::Finally);
      ++pos_;
      f->children.push_back(block());
      n->children.push_back(done(std::move(f)));
    }
    return done(std::move(n));
  }

  NodePtr switch_construct(NodeKind kind) {
    auto n = make(kind);
    expect("switch");
    n->children.push_back(paren_expression(*n));
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("expected '}'");
      auto c = make(NodeKind::SwitchCase);
      auto labels = make(NodeKind::ExprList);
      if (accept("default")) {
        c->header = TokenRange{pos_, pos_};
      } else {
        expect("case");
        const auto first = pos_;
        do {
          if (at("default")) {
            ++pos_;
          } else if (pattern_ahead()) {
            pattern(*labels);
          } else {
            labels->children.push_back(conditional());
          }
        } while (accept(","));
        if (at_ident("when")) {
          ++pos_;
          labels->children.push_back(expression());
        }
        c->header = TokenRange{first, pos_};
      }
      c->children.push_back(done(std::move(labels)));
      if (accept("->")) {
        if (at("{")) {
          c->children.push_back(block());
        } else if (at("throw")) {
          c->children.push_back(statement());
        } else {
          auto s = make(NodeKind::ExprStmt);
          s->children.push_back(expression());
          expect(";");
          c->children.push_back(done(std::move(s)));
        }
      } else {
        if (!accept(":")) fail("expected ':' or '->'");
        while (!at("case") && !at("default") && !at("}")) {
          if (at_end()) fail("expected '}'");
          c->children.push_back(block_statement());
        }
      }
      n->children.push_back(done(std::move(c)));
    }
    expect("}");
    return done(std::move(n));
  }

  // -- patterns --------------------------------------------------------------

  // A case label that starts with a type pattern or a record pattern.
  bool pattern_ahead() {
    const auto save = pos_;
    bool result = false;
    try {
      accept("final");
      type();
      result = at_ident() || at("(");
    } catch (const ParseFail&) {
      result = false;
    }
    pos_ = save;
    return result;
  }

  // Appends one Declarator per binding of the pattern to `out`.
  void pattern(Node& out) {
    accept("final");
    const auto start = pos_;
    auto t = type();
    if (at("(")) {
      auto holder = make(NodeKind::ExprList, start);
      record_pattern(*holder);
      for (auto& c : holder->children) out.children.push_back(std::move(c));
      return;
    }
    auto d = make(NodeKind::Declarator);
    d->name_token = pos_;
    d->text = ident();
    d->type = std::move(t);
    out.children.push_back(done(std::move(d)));
  }

  void record_pattern(Node& out) {
    expect("(");
    if (!at(")")) {
      do {
        pattern(out);
      } while (accept(","));
    }
    expect(")");
    if (at_ident() && !at_ident("when")) {
      auto d = make(NodeKind::Declarator);
      d->name_token = pos_;
      d->text = ident();
      out.children.push_back(done(std::move(d)));
    }
  }

  // -- expressions -----------------------------------------------------------

  NodePtr expression() { return assignment(); }

  bool lambda_ahead() const {
    if (at_ident() && at("->", 1)) return true;
    if (at("(") && tok().match > 0) {
      const auto close = static_cast<std::size_t>(tok().match);
      return close + 1 < toks_.size() && toks_[close + 1].is("->");
    }
    return false;
  }

  NodePtr assignment() {
    if (lambda_ahead()) return lambda();
    const auto start = pos_;
    auto lhs = conditional();
    if (is_assign_op(tok())) {
      auto n = make(NodeKind::Assign, start);
      n->text = std::string(tok().text);
      ++pos_;
      n->children.push_back(std::move(lhs));
      n->children.push_back(assignment());
      return done(std::move(n));
    }
    return lhs;
  }

  NodePtr conditional() {
    const auto start = pos_;
    auto cond = binary(1);
    if (!at("?")) return cond;
    ++pos_;
    auto n = make(NodeKind::Conditional, start);
    n->children.push_back(std::move(cond));
    n->children.push_back(lambda_ahead() ? lambda() : expression());
    expect(":");
    n->children.push_back(lambda_ahead() ? lambda() : conditional());
    return done(std::move(n));
  }

  // Returns the binary operator at the cursor and its token length, joining
  // adjacent '>' tokens into shift operators.
  std::pair<std::string, std::size_t> peek_binary_op() const {
    const auto& t = tok();
    if (t.kind == TokenKind::Keyword && t.text == "instanceof") return {"instanceof", 1};
    if (t.kind != TokenKind::Operator) return {"", 0};
    if (t.text == ">") {
      if (at(">", 1) && adjacent(0)) {
        if (at(">", 2) && adjacent(1)) return {">>>", 3};
        return {">>", 2};
      }
      return {">", 1};
    }
    if (binary_precedence(t.text) > 0) return {std::string(t.text), 1};
    return {"", 0};
  }

  NodePtr binary(int min_prec) {
    const auto start = pos_;
    auto lhs = unary();
    while (true) {
      const auto [op, len] = peek_binary_op();
      if (op.empty()) break;
      const int prec = binary_precedence(op);
      if (prec < min_prec) break;
      if (op == "instanceof") {
        ++pos_;
        auto n = make(NodeKind::InstanceOf, start);
        accept("final");
        n->children.push_back(std::move(lhs));
        n->type = type();
        if (at("(")) {
          record_pattern(*n);
        } else if (at_ident()) {
          n->name_token = pos_;
          n->text = ident();
        }
        lhs = done(std::move(n));
        continue;
      }
      pos_ += static_cast<TokenIndex>(len);
      auto rhs = binary(prec + 1);
      auto n = make(NodeKind::Binary, start);
      n->text = op;
      n->children.push_back(std::move(lhs));
      n->children.push_back(std::move(rhs));
      lhs = done(std::move(n));
    }
    return lhs;
  }

  NodePtr unary() {
    const auto start = pos_;
    const auto& t = tok();
    if (t.kind == TokenKind::Operator &&
        (t.text == "++" || t.text == "--" || t.text == "+" || t.text == "-" || t.text == "!" ||
         t.text == "~")) {
      auto n = make(NodeKind::Unary, start);
      n->text = std::string(t.text);
      ++pos_;
      n->children.push_back(unary());
      return done(std::move(n));
    }
    if (at("(") && is_cast()) {
      auto n = make(NodeKind::Cast, start);
      ++pos_;
      n->type = type();
      while (accept("&")) n->type += " & " + type();
      expect(")");
      n->children.push_back(lambda_ahead() ? lambda() : unary());
      return done(std::move(n));
    }
    return postfix(primary(), start);
  }

  bool is_cast() {
    const auto save = pos_;
    if (tok().match < 0) return false;
    const auto close = static_cast<TokenIndex>(tok().match);
    ++pos_;
    const bool primitive = tok().kind == TokenKind::Keyword && is_primitive(tok().text);
    bool ok = false;
    try {
      type();
      while (accept("&")) type();
      ok = pos_ == close;
    } catch (const ParseFail&) {
      ok = false;
    }
    pos_ = save;
    if (!ok) return false;
    if (primitive) return true;
    const auto& next = toks_[close + 1];
    switch (next.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntegerLiteral:
      case TokenKind::FloatingLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::TextBlock:
        return true;
      case TokenKind::Keyword:
        return next.text == "this" || next.text == "super" || next.text == "new" ||
               next.text == "true" || next.text == "false" || next.text == "null" ||
               next.text == "switch";
      case TokenKind::Operator:
        return next.text == "(" || next.text == "!" || next.text == "~";
      default:
        return false;
    }
  }

  void arguments(Node& n) {
    n.header = paren_header();
    expect("(");
    while (!at(")")) {
      n.children.push_back(expression());
      if (!accept(",")) break;
    }
    expect(")");
  }

  NodePtr primary() {
    const auto start = pos_;
    const auto& t = tok();
    if (is_literal(t.kind)) {
      ++pos_;
      return done(make(NodeKind::Literal, start));
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "true" || t.text == "false" || t.text == "null") {
        ++pos_;
        return done(make(NodeKind::Literal, start));
      }
      if (t.text == "this" || t.text == "super") {
        const bool is_this = t.text == "this";
        ++pos_;
        if (at("(")) {
          auto n = make(NodeKind::ExplicitCtorCall, start);
          n->text = is_this ? "this" : "super";
          n->name_token = start;
          arguments(*n);
          return done(std::move(n));
        }
        return done(make(is_this ? NodeKind::This : NodeKind::Super, start));
      }
      if (t.text == "new") return creation(nullptr, start);
      if (t.text == "switch") return switch_construct(NodeKind::SwitchExpr);
      if (is_primitive(t.text) || t.text == "void") {
        auto n = make(NodeKind::ClassLit, start);
        n->type = type();
        if (at("::")) return done(std::move(n));
        expect(".");
        expect("class");
        return done(std::move(n));
      }
      fail("unexpected keyword");
    }
    if (at("(")) {
      auto n = make(NodeKind::Paren, start);
      ++pos_;
      n->children.push_back(expression());
      expect(")");
      return done(std::move(n));
    }
    if (at_ident()) {
      if (at("(", 1)) {
        auto n = make(NodeKind::MethodCall, start);
        n->name_token = pos_;
        n->text = ident();
        arguments(*n);
        return done(std::move(n));
      }
      auto n = make(NodeKind::Name, start);
      n->name_token = pos_;
      n->text = ident();
      return done(std::move(n));
    }
    fail("expected expression");
  }

  NodePtr postfix(NodePtr expr, TokenIndex start) {
    while (true) {
      if (at(".")) {
        ++pos_;
        if (at("<")) skip_type_params();
        if (at("new")) {
          expr = creation(std::move(expr), start);
          continue;
        }
        if (accept("this")) {
          expr = done(make(NodeKind::This, start));
          continue;
        }
        if (accept("class")) {
          auto n = make(NodeKind::ClassLit, start);
          n->target = std::move(expr);
          expr = done(std::move(n));
          continue;
        }
        if (at("super")) {
          const auto super_token = pos_;
          ++pos_;
          if (at("(")) {
            auto n = make(NodeKind::ExplicitCtorCall, start);
            n->text = "super";
            n->name_token = super_token;
            n->target = std::move(expr);
            arguments(*n);
            expr = done(std::move(n));
          } else {
            expr = done(make(NodeKind::Super, start));
          }
          continue;
        }
        const auto name_token = pos_;
        auto name = ident();
        auto n = make(at("(") ? NodeKind::MethodCall : NodeKind::FieldAccess, start);
        n->name_token = name_token;
        n->text = std::move(name);
        n->target = std::move(expr);
        if (n->kind == NodeKind::MethodCall) arguments(*n);
        expr = done(std::move(n));
        continue;
      }
      if (at("[")) {
        if (at("]", 1)) {
          auto n = make(NodeKind::ClassLit, start);
          n->target = std::move(expr);
          while (at("[") && at("]", 1)) pos_ += 2;
          if (!at("::")) {
            expect(".");
            expect("class");
          }
          expr = done(std::move(n));
          continue;
        }
        auto n = make(NodeKind::ArrayAccess, start);
        ++pos_;
        n->children.push_back(std::move(expr));
        n->children.push_back(expression());
        expect("]");
        expr = done(std::move(n));
        continue;
      }
      if (at("++") || at("--")) {
        auto n = make(NodeKind::Postfix, start);
        n->text = std::string(tok().text);
        ++pos_;
        n->children.push_back(std::move(expr));
        expr = done(std::move(n));
        continue;
      }
      if (at("::")) {
        ++pos_;
        if (at("<")) skip_type_params();
        auto n = make(NodeKind::MethodRef, start);
        n->name_token = pos_;
        if (accept("new")) {
          n->text = "new";
        } else {
          n->text = ident();
        }
        n->target = std::move(expr);
        expr = done(std::move(n));
        continue;
      }
      return expr;
    }
  }

  NodePtr creation(NodePtr outer, TokenIndex start) {
    expect("new");
    if (at("<")) skip_type_params();
    while (at("@")) skip_annotation();
    std::string full;
    TokenIndex name_token = pos_;
    if (tok().kind == TokenKind::Keyword && is_primitive(tok().text)) {
      full = std::string(tok().text);
      ++pos_;
    } else {
      name_token = pos_;
      full = ident();
      type_args(full);
      while (at(".") && at_ident(1)) {
        ++pos_;
        name_token = pos_;
        full += '.';
        full += ident();
        type_args(full);
      }
    }
    if (at("[")) {
      auto n = make(NodeKind::NewArray, start);
      n->target = std::move(outer);
      n->type = full;
      while (at("[")) {
        if (at("]", 1)) {
          pos_ += 2;
        } else {
          ++pos_;
          n->children.push_back(expression());
          expect("]");
        }
        n->type += "[]";
      }
      if (at("{")) n->children.push_back(array_init());
      return done(std::move(n));
    }
    auto n = make(NodeKind::New, start);
    n->target = std::move(outer);
    n->type = std::move(full);
    n->name_token = name_token;
    n->text = std::string(toks_[name_token].text);
    arguments(*n);
    if (at("{")) {
      n->decl = std::make_unique<TypeDecl>();
      n->decl->range.first = pos_;
      class_body(*n->decl);
      n->decl->range.end = pos_;
    }
    return done(std::move(n));
  }

  NodePtr lambda() {
    auto n = make(NodeKind::Lambda);
    if (at_ident()) {
      auto p = make(NodeKind::Declarator);
      p->name_token = pos_;
      p->text = ident();
      n->children.push_back(done(std::move(p)));
    } else {
      expect("(");
      while (!at(")")) {
        auto p = make(NodeKind::Declarator);
        if (at_ident() && (at(",", 1) || at(")", 1))) {
          p->name_token = pos_;
          p->text = ident();
        } else {
          modifiers(false);
          p->type = type();
          if (accept("...")) p->type += "...";
          p->name_token = pos_;
          p->text = ident();
          dims(p->type);
        }
        n->children.push_back(done(std::move(p)));
        if (!accept(",")) break;
      }
      expect(")");
    }
    expect("->");
    n->children.push_back(at("{") ? block() : expression());
    return done(std::move(n));
  }

  const std::vector<Token>& toks_;
  TokenIndex pos_ = 0;
  std::vector<SyntaxError> errors_;
};

}  // namespace

CompilationUnit parse(const LexResult& lexed) { return Parser(lexed).run(); }

}  // namespace ooscan::syntax
