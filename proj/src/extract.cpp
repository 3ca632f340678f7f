// Model extraction: walks the syntax tree of one compilation unit and fills
// the package/class/member tree plus the per-method body records.

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "ooscan/lexer.hpp"
#include "ooscan/parser.hpp"
#include "ooscan/syntax.hpp"

namespace ooscan {

namespace {

using namespace syntax;

constexpr std::string_view kInitBlockName = "<init-block>";
constexpr std::string_view kUnknownType = "unknown";

template <class T>
struct Keyed {
  TokenIndex key;
  T value;
};

template <class T>
void flush(std::vector<Keyed<T>>& from, std::vector<T>& to) {
  std::stable_sort(from.begin(), from.end(),
                   [](const auto& a, const auto& b) { return a.key < b.key; });
  to.reserve(to.size() + from.size());
  for (auto& k : from) to.push_back(std::move(k.value));
  from.clear();
}

// Body records of one modeled method, keyed by source position so that
// records from nested lambdas and anonymous classes interleave in order.
struct Sink {
  std::vector<Keyed<LocalVariable>> locals;
  std::vector<Keyed<AccessRecord>> accesses;
  std::vector<Keyed<InvocationRecord>> invocations;
  std::vector<Keyed<AssignmentRecord>> assignments;

  void flush_into(MethodDecl& m) {
    flush(locals, m.local_variables);
    flush(accesses, m.accesses);
    flush(invocations, m.invocations);
    flush(assignments, m.assignments);
  }
};

struct Owner {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  bool is_method = false;
  std::size_t cls = 0;
  std::size_t method = 0;
};

struct Scope {
  bool is_class = false;
  std::unordered_map<std::string, std::string> names;
};

std::string simple_type_name(std::string_view type) {
  const auto lt = type.find('<');
  if (lt != std::string_view::npos) type = type.substr(0, lt);
  const auto dot = type.rfind('.');
  if (dot != std::string_view::npos) type = type.substr(dot + 1);
  return std::string(type);
}

class Extractor {
 public:
  Extractor(const SourceUnit& source, const LexResult& lexed)
      : source_(source), toks_(lexed.tokens), comments_(lexed.comments) {}

  ParsedUnit run(const CompilationUnit& unit) {
    ParsedUnit out;
    for (const auto& err : unit.errors) {
      const auto& t = toks_[std::min<std::size_t>(err.token, toks_.size() - 1)];
      diagnose(t, err.message, Severity::Error);
    }
    pkg_.name = unit.package_name.value_or(std::string(kDefaultPackage));
    for (const auto& type : unit.types) collect_fields(*type);
    for (const auto& type : unit.types) process_type(*type, "", false);
    out.dropped_comments = attach_comments();
    if (unit.package_name || !pkg_.classes.empty()) out.fragment.packages.push_back(std::move(pkg_));
    out.diagnostics = std::move(diagnostics_);
    return out;
  }

 private:
  void diagnose(const Token& at, std::string message, Severity severity) {
    diagnostics_.push_back({source_.file_path, static_cast<int>(at.line),
                            static_cast<int>(at.column), std::move(message), severity});
  }

  // -- text --------------------------------------------------------------

  // Source text of a token range: tokens joined with a single space wherever
  // the source had whitespace or comments between them.
  std::string render(TokenRange r, bool strip_string_quotes) const {
    std::string out;
    for (auto i = r.first; i < r.end && i < toks_.size(); ++i) {
      const auto& t = toks_[i];
      if (t.kind == TokenKind::End) break;
      if (i > r.first && toks_[i - 1].end_offset() < t.offset) out += ' ';
      if (strip_string_quotes && t.kind == TokenKind::StringLiteral && t.text.size() >= 2) {
        out += t.text.substr(1, t.text.size() - 2);
      } else if (strip_string_quotes && t.kind == TokenKind::TextBlock && t.text.size() >= 6) {
        out += t.text.substr(3, t.text.size() - 6);
      } else {
        out += t.text;
      }
    }
    return out;
  }

  TokenRange without_semicolon(TokenRange r) const {
    if (!r.empty() && toks_[r.end - 1].is(";")) --r.end;
    return r;
  }

  const std::string& how_used() {
    if (stmt_.first != cached_stmt_.first || stmt_.end != cached_stmt_.end || !cache_valid_) {
      cached_text_ = render(stmt_, false);
      cached_stmt_ = stmt_;
      cache_valid_ = true;
    }
    return cached_text_;
  }

  // -- declarations --------------------------------------------------------

  void collect_fields(const TypeDecl& d) {
    for (const auto& c : d.record_components) unit_fields_.try_emplace(c.name, c.type);
    for (const auto& m : d.members) {
      if (const auto* f = std::get_if<FieldSyntax>(&m)) {
        for (const auto& v : f->vars) unit_fields_.try_emplace(v.name, v.type);
      } else if (const auto* c = std::get_if<EnumConstantSyntax>(&m)) {
        unit_fields_.try_emplace(c->name, d.name);
      } else if (const auto* t = std::get_if<std::unique_ptr<TypeDecl>>(&m)) {
        collect_fields(**t);
      }
    }
  }

  Scope class_scope(const TypeDecl& d) const {
    Scope s;
    s.is_class = true;
    for (const auto& c : d.record_components) s.names.try_emplace(c.name, c.type);
    for (const auto& m : d.members) {
      if (const auto* f = std::get_if<FieldSyntax>(&m)) {
        for (const auto& v : f->vars) s.names.try_emplace(v.name, v.type);
      } else if (const auto* c = std::get_if<EnumConstantSyntax>(&m)) {
        s.names.try_emplace(c->name, d.name);
      }
    }
    return s;
  }

  std::uint32_t begin_offset(TokenRange r) const { return toks_[r.first].offset; }
  std::uint32_t end_offset(TokenRange r) const {
    return r.end > r.first ? toks_[r.end - 1].end_offset() : toks_[r.first].offset;
  }

  void process_type(const TypeDecl& d, const std::string& prefix, bool in_interface) {
    const bool is_interface = d.kind == TypeKind::Interface || d.kind == TypeKind::Annotation;
    ClassDecl cls;
    cls.name = prefix + d.name;
    cls.access = d.mods.access.value_or(in_interface ? AccessLevel::Public : AccessLevel::Default);
    cls.is_interface = is_interface;
    if (!is_interface && d.extends) cls.superclass = *d.extends;
    cls.super_interfaces = d.implements;

    const bool duplicate = std::any_of(pkg_.classes.begin(), pkg_.classes.end(),
                                       [&](const ClassDecl& c) { return c.name == cls.name; });
    if (duplicate) {
      diagnose(toks_[d.name_token], "duplicate class '" + cls.name + "' ignored", Severity::Warning);
      return;
    }

    // Attributes: record components, enum constants, then fields in order.
    for (const auto& c : d.record_components) {
      add_attribute(cls, {c.name, AccessLevel::Private, c.type, false}, c.name_token);
    }
    for (const auto& m : d.members) {
      if (const auto* c = std::get_if<EnumConstantSyntax>(&m)) {
        add_attribute(cls, {c->name, AccessLevel::Public, d.name, true}, c->name_token);
      } else if (const auto* f = std::get_if<FieldSyntax>(&m)) {
        const auto access =
            f->mods.access.value_or(is_interface ? AccessLevel::Public : AccessLevel::Default);
        for (const auto& v : f->vars) {
          add_attribute(cls, {v.name, access, v.type, f->mods.is_static || is_interface},
                        v.name_token);
        }
      }
    }

    const auto cls_index = pkg_.classes.size();
    pkg_.classes.push_back(std::move(cls));
    owners_.push_back({begin_offset(d.range), end_offset(d.range), false, cls_index, 0});

    scopes_.push_back(class_scope(d));
    class_names_.push_back(d.name);
    super_names_.push_back(d.extends ? simple_type_name(*d.extends)
                                     : std::string(kImplicitSuperclass));

    std::vector<MethodDecl> methods;
    std::vector<std::vector<TokenRange>> method_ranges;
    std::optional<std::size_t> init_index;
    Sink init_sink;
    bool init_all_static = true;

    for (const auto& m : d.members) {
      if (const auto* ms = std::get_if<MethodSyntax>(&m)) {
        MethodDecl md;
        md.name = ms->name;
        md.access = ms->mods.access.value_or(is_interface ? AccessLevel::Public
                                                          : AccessLevel::Default);
        md.return_type = ms->is_constructor ? "void" : ms->return_type;
        md.is_static = ms->mods.is_static;
        for (const auto& p : ms->params) md.parameters.push_back({p.name, p.type});
        md.exceptions = ms->throws;
        const auto sig = md.signature();
        if (std::any_of(methods.begin(), methods.end(),
                        [&](const MethodDecl& o) { return o.signature() == sig; })) {
          diagnose(toks_[ms->name_token], "duplicate method '" + sig + "' ignored",
                   Severity::Warning);
          continue;
        }
        if (ms->body) {
          Sink sink;
          walk_method_body(ms->params, *ms->body, sink);
          sink.flush_into(md);
        }
        methods.push_back(std::move(md));
        method_ranges.push_back({ms->range});
      } else if (const auto* init = std::get_if<InitializerSyntax>(&m)) {
        if (!init_index) {
          MethodDecl md;
          md.name = std::string(kInitBlockName);
          init_index = methods.size();
          methods.push_back(std::move(md));
          method_ranges.emplace_back();
        }
        init_all_static = init_all_static && init->is_static;
        method_ranges[*init_index].push_back(init->range);
        walk_method_body({}, *init->body, init_sink);
      }
    }
    if (init_index) {
      init_sink.flush_into(methods[*init_index]);
      methods[*init_index].is_static = init_all_static;
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
      for (const auto& r : method_ranges[i]) {
        owners_.push_back({begin_offset(r), end_offset(r), true, cls_index, i});
      }
    }
    pkg_.classes[cls_index].methods = std::move(methods);

    const auto nested_prefix = pkg_.classes[cls_index].name + ".";
    for (const auto& m : d.members) {
      if (const auto* t = std::get_if<std::unique_ptr<TypeDecl>>(&m)) {
        process_type(**t, nested_prefix, is_interface);
      }
    }

    super_names_.pop_back();
    class_names_.pop_back();
    scopes_.pop_back();
  }

  void add_attribute(ClassDecl& cls, AttributeDecl attr, TokenIndex at) {
    const bool duplicate = std::any_of(cls.attributes.begin(), cls.attributes.end(),
                                       [&](const AttributeDecl& a) { return a.name == attr.name; });
    if (duplicate) {
      diagnose(toks_[at], "duplicate attribute '" + attr.name + "' ignored", Severity::Warning);
      return;
    }
    cls.attributes.push_back(std::move(attr));
  }

  void walk_method_body(const std::vector<Variable>& params, const Node& body, Sink& sink) {
    Sink* const saved = sink_;
    sink_ = &sink;
    Scope s;
    for (const auto& p : params) s.names[p.name] = p.type;
    scopes_.push_back(std::move(s));
    stmt(body);
    scopes_.pop_back();
    sink_ = saved;
  }

  // Anonymous and local class bodies: analyzed, attributed to the enclosing
  // method, never emitted as classes.
  void walk_local_type(const TypeDecl& d) {
    scopes_.push_back(class_scope(d));
    class_names_.push_back(d.name);
    super_names_.push_back(d.extends ? simple_type_name(*d.extends)
                                     : std::string(kImplicitSuperclass));
    for (const auto& m : d.members) {
      if (const auto* ms = std::get_if<MethodSyntax>(&m)) {
        if (ms->body) walk_method_body(ms->params, *ms->body, *sink_);
      } else if (const auto* init = std::get_if<InitializerSyntax>(&m)) {
        walk_method_body({}, *init->body, *sink_);
      } else if (const auto* t = std::get_if<std::unique_ptr<TypeDecl>>(&m)) {
        walk_local_type(**t);
      }
    }
    super_names_.pop_back();
    class_names_.pop_back();
    scopes_.pop_back();
  }

  // -- statements ------------------------------------------------------------

  struct StatementGuard {
    Extractor& self;
    TokenRange saved;
    StatementGuard(Extractor& e, TokenRange r) : self(e), saved(e.stmt_) { e.stmt_ = r; }
    ~StatementGuard() { self.stmt_ = saved; }
  };

  struct ScopeGuard {
    Extractor& self;
    explicit ScopeGuard(Extractor& e) : self(e) { e.scopes_.emplace_back(); }
    ~ScopeGuard() { self.scopes_.pop_back(); }
  };

  void declare(const std::string& name, const std::string& type) {
    scopes_.back().names[name] = type.empty() ? std::string(kUnknownType) : type;
  }

  void local_var(const Node& n, TokenRange text_range) {
    StatementGuard g(*this, text_range);
    for (const auto& d : n.children) {
      declare(d->text, d->type);
      sink_->locals.push_back({d->name_token, {d->text, d->type}});
      if (!d->children.empty()) expr(*d->children.front());
    }
  }

  void stmt(const Node& n) {
    switch (n.kind) {
      case NodeKind::Block: {
        ScopeGuard scope(*this);
        for (const auto& c : n.children) stmt(*c);
        break;
      }
      case NodeKind::LocalVar:
        local_var(n, without_semicolon(n.range));
        break;
      case NodeKind::ExprStmt:
      case NodeKind::Return:
      case NodeKind::Throw:
      case NodeKind::Yield:
      case NodeKind::Assert: {
        StatementGuard g(*this, without_semicolon(n.range));
        for (const auto& c : n.children) expr(*c);
        break;
      }
      case NodeKind::If:
      case NodeKind::While: {
        {
          StatementGuard g(*this, n.header);
          expr(*n.children[0]);
        }
        for (std::size_t i = 1; i < n.children.size(); ++i) stmt(*n.children[i]);
        break;
      }
      case NodeKind::DoWhile: {
        stmt(*n.children[0]);
        StatementGuard g(*this, n.header);
        expr(*n.children[1]);
        break;
      }
      case NodeKind::For: {
        ScopeGuard scope(*this);
        {
          StatementGuard g(*this, n.header);
          const auto& init = *n.children[0];
          if (init.kind == NodeKind::LocalVar) {
            local_var(init, n.header);
          } else {
            for (const auto& c : init.children) expr(*c);
          }
          if (n.children[1]->kind != NodeKind::Empty) expr(*n.children[1]);
          for (const auto& c : n.children[2]->children) expr(*c);
        }
        stmt(*n.children[3]);
        break;
      }
      case NodeKind::ForEach: {
        ScopeGuard scope(*this);
        {
          StatementGuard g(*this, n.header);
          local_var(*n.children[0], n.header);
          expr(*n.children[1]);
        }
        stmt(*n.children[2]);
        break;
      }
      case NodeKind::Switch:
        switch_body(n);
        break;
      case NodeKind::Try: {
        ScopeGuard scope(*this);
        for (const auto& r : n.children[0]->children) {
          if (r->kind == NodeKind::LocalVar) {
            local_var(*r, r->range);
          } else {
            StatementGuard g(*this, r->range);
            expr(*r);
          }
        }
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          const auto& c = *n.children[i];
          if (c.kind == NodeKind::Catch) {
            ScopeGuard catch_scope(*this);
            declare(c.children[0]->text, c.children[0]->type);
            stmt(*c.children[1]);
          } else if (c.kind == NodeKind::Finally) {
            stmt(*c.children[0]);
          } else {
            stmt(c);
          }
        }
        break;
      }
      case NodeKind::Synchronized: {
        {
          StatementGuard g(*this, n.header);
          expr(*n.children[0]);
        }
        stmt(*n.children[1]);
        break;
      }
      case NodeKind::Labeled:
        stmt(*n.children[0]);
        break;
      case NodeKind::LocalClass:
        walk_local_type(*n.decl);
        break;
      default:
        break;
    }
  }

  void switch_body(const Node& n) {
    {
      StatementGuard g(*this, n.header);
      expr(*n.children[0]);
    }
    ScopeGuard scope(*this);
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      const auto& c = *n.children[i];
      {
        StatementGuard g(*this, c.header);
        for (const auto& label : c.children[0]->children) expr(*label);
      }
      for (std::size_t k = 1; k < c.children.size(); ++k) stmt(*c.children[k]);
    }
  }

  // -- expressions -----------------------------------------------------------

  std::optional<std::string> lookup(const std::string& name, bool fields_only) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (fields_only && !it->is_class) continue;
      if (const auto f = it->names.find(name); f != it->names.end()) return f->second;
    }
    if (const auto f = unit_fields_.find(name); f != unit_fields_.end()) return f->second;
    return std::nullopt;
  }

  void access(const Node& n, bool fields_only) {
    if (const auto type = lookup(n.text, fields_only)) {
      sink_->accesses.push_back({n.name_token, {n.text, *type, how_used()}});
    }
  }

  void invocation(TokenIndex at, std::string name, TokenRange args) {
    sink_->invocations.push_back({at, {std::move(name), "[" + render(args, true) + "]"}});
  }

  void expr(const Node& n) {
    switch (n.kind) {
      case NodeKind::Name:
        access(n, false);
        return;
      case NodeKind::FieldAccess:
        expr(*n.target);
        access(n, true);
        return;
      case NodeKind::MethodCall:
        if (n.target) expr(*n.target);
        invocation(n.name_token, n.text, n.header);
        break;
      case NodeKind::ExplicitCtorCall:
        if (n.target) expr(*n.target);
        invocation(n.name_token, n.text == "this" ? class_names_.back() : super_names_.back(),
                   n.header);
        break;
      case NodeKind::New:
        if (n.target) expr(*n.target);
        invocation(n.name_token, n.text, n.header);
        for (const auto& c : n.children) expr(*c);
        if (n.decl) walk_local_type(*n.decl);
        return;
      case NodeKind::Assign: {
        const auto& lhs = *n.children[0];
        const auto& rhs = *n.children[1];
        std::string rhs_text = render(rhs.range, false);
        if (n.text != "=") rhs_text = n.text + " " + rhs_text;
        sink_->assignments.push_back({n.range.first, {render(lhs.range, false), rhs_text}});
        break;
      }
      case NodeKind::Lambda: {
        ScopeGuard scope(*this);
        for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
          declare(n.children[i]->text, n.children[i]->type);
        }
        const auto& body = *n.children.back();
        if (body.kind == NodeKind::Block) {
          stmt(body);
        } else {
          expr(body);
        }
        return;
      }
      case NodeKind::InstanceOf:
        expr(*n.children[0]);
        if (!n.text.empty()) declare(n.text, n.type);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          declare(n.children[i]->text, n.children[i]->type);
        }
        return;
      case NodeKind::Declarator:  // pattern binding in a case label
        declare(n.text, n.type);
        return;
      case NodeKind::MethodRef:
        if (n.target) expr(*n.target);
        return;
      case NodeKind::ClassLit:
      case NodeKind::Literal:
      case NodeKind::This:
      case NodeKind::Super:
        return;
      case NodeKind::SwitchExpr:
        switch_body(n);
        return;
      default:
        if (n.target) expr(*n.target);
        break;
    }
    for (const auto& c : n.children) expr(*c);
  }

  // -- comments ----------------------------------------------------------

  std::optional<std::size_t> owner_for(std::uint32_t offset) const {
    std::optional<std::size_t> best;
    auto span = [&](std::size_t i) { return owners_[i].end - owners_[i].begin; };
    for (std::size_t i = 0; i < owners_.size(); ++i) {
      const auto& o = owners_[i];
      if (o.is_method && o.begin <= offset && offset < o.end && (!best || span(i) < span(*best))) {
        best = i;
      }
    }
    if (best) return best;
    for (std::size_t i = 0; i < owners_.size(); ++i) {
      const auto& o = owners_[i];
      if (o.begin > offset && (!best || o.begin < owners_[*best].begin)) best = i;
    }
    if (best) return best;
    for (std::size_t i = 0; i < owners_.size(); ++i) {
      const auto& o = owners_[i];
      if (!o.is_method && o.begin <= offset && offset < o.end && (!best || span(i) < span(*best))) {
        best = i;
      }
    }
    return best;
  }

  std::size_t attach_comments() {
    std::size_t dropped = 0;
    for (const auto& c : comments_) {
      auto text = comment_text(c);
      const auto owner = text.empty() ? std::nullopt : owner_for(c.offset);
      if (!owner) {
        ++dropped;
        continue;
      }
      const auto& o = owners_[*owner];
      auto& cls = pkg_.classes[o.cls];
      if (o.is_method) {
        cls.methods[o.method].comments.push_back(std::move(text));
      } else {
        cls.comments.push_back(std::move(text));
      }
    }
    return dropped;
  }

  const SourceUnit& source_;
  const std::vector<Token>& toks_;
  const std::vector<Comment>& comments_;
  PackageDecl pkg_;
  std::vector<ParseDiagnostic> diagnostics_;
  std::vector<Owner> owners_;
  std::unordered_map<std::string, std::string> unit_fields_;
  std::vector<Scope> scopes_;
  std::vector<std::string> class_names_;
  std::vector<std::string> super_names_;
  Sink* sink_ = nullptr;
  TokenRange stmt_;
  TokenRange cached_stmt_;
  bool cache_valid_ = false;
  std::string cached_text_;
};

}  // namespace

ParsedUnit parse_unit(const SourceUnit& source) {
  const auto lexed = lex(source.content);
  if (!lexed.errors.empty()) {
    ParsedUnit out;
    out.skipped = true;
    for (const auto& e : lexed.errors) {
      out.diagnostics.push_back({source.file_path, static_cast<int>(e.line),
                                 static_cast<int>(e.column), e.message + "; file skipped",
                                 Severity::Error});
    }
    return out;
  }
  const auto tree = syntax::parse(lexed);
  return Extractor(source, lexed).run(tree);
}

}  // namespace ooscan
