#include <expat.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>

#include "ooscan/xmlio.hpp"

namespace ooscan {

namespace {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Element> children;
  std::size_t line = 0;
};

// Builds an element tree with expat; rejects text content.
class TreeBuilder {
 public:
  TreeBuilder() : parser_(XML_ParserCreate("UTF-8"), &XML_ParserFree) {
    XML_SetUserData(parser_.get(), this);
    XML_SetElementHandler(parser_.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
    XML_SetCharacterDataHandler(parser_.get(), &TreeBuilder::on_text);
  }

  Element build(std::string_view text) {
    const auto ok = XML_Parse(parser_.get(), text.data(), static_cast<int>(text.size()), 1);
    if (error_) throw *error_;
    if (ok != XML_STATUS_OK) {
      throw SchemaError(std::string("malformed XML: ") +
                            XML_ErrorString(XML_GetErrorCode(parser_.get())),
                        current_path(), XML_GetCurrentLineNumber(parser_.get()));
    }
    if (!root_) throw SchemaError("document has no root element");
    return std::move(*root_);
  }

 private:
  static void on_start(void* self_ptr, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<TreeBuilder*>(self_ptr);
    Element e;
    e.name = name;
    e.line = XML_GetCurrentLineNumber(self->parser_.get());
    for (auto a = attrs; *a; a += 2) e.attrs.emplace_back(a[0], a[1]);
    if (self->stack_.empty()) {
      self->root_ = std::make_unique<Element>(std::move(e));
      self->stack_.push_back(self->root_.get());
    } else {
      auto& kids = self->stack_.back()->children;
      kids.push_back(std::move(e));
      self->stack_.push_back(&kids.back());
    }
  }

  static void on_end(void* self_ptr, const XML_Char*) {
    static_cast<TreeBuilder*>(self_ptr)->stack_.pop_back();
  }

  static void on_text(void* self_ptr, const XML_Char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(self_ptr);
    const std::string_view text(s, static_cast<std::size_t>(len));
    if (self->error_ || text.find_first_not_of(" \t\r\n") == std::string_view::npos) return;
    self->error_ = SchemaError("unexpected text content", self->current_path(),
                               XML_GetCurrentLineNumber(self->parser_.get()));
    XML_StopParser(self->parser_.get(), XML_FALSE);
  }

  std::string current_path() const {
    std::string out;
    for (const auto* e : stack_) {
      if (!out.empty()) out += '/';
      out += e->name;
    }
    return out;
  }

  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser_;
  std::unique_ptr<Element> root_;
  std::vector<Element*> stack_;  // children vectors only grow at the back
  std::optional<SchemaError> error_;
};

// Element-to-model conversion with schema checks.
class Converter {
 public:
  CodeModel project(const Element& e) {
    const std::string path = "Project";
    if (e.name != "Project") fail(e, e.name, "root element must be Project");
    CodeModel model;
    model.project_name = attrs(e, path, {"Name"})[0];
    for_children(e, path, {"Packages"}, [&](const Element& c, const std::string& p) {
      for_children(c, p, {"Package"}, [&](const Element& pk, const std::string& pp) {
        model.packages.push_back(package(pk, pp));
      });
    });
    return model;
  }

 private:
  [[noreturn]] static void fail(const Element& e, const std::string& path, const std::string& msg) {
    throw SchemaError(msg, path, e.line);
  }

  // Values of exactly the listed attributes, in the listed order.
  static std::vector<std::string> attrs(const Element& e, const std::string& path,
                                        std::initializer_list<std::string_view> names) {
    std::vector<std::string> out(names.size());
    std::vector<bool> seen(names.size(), false);
    for (const auto& [key, value] : e.attrs) {
      const auto it = std::find(names.begin(), names.end(), key);
      if (it == names.end()) fail(e, path, "unknown attribute '" + key + "'");
      const auto i = static_cast<std::size_t>(it - names.begin());
      out[i] = value;
      seen[i] = true;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!seen[i]) fail(e, path, "missing attribute '" + std::string(names.begin()[i]) + "'");
    }
    return out;
  }

  // Visits children, which must be among `allowed`. Container elements (the
  // ones whose name does not repeat) may appear at most once.
  template <class F>
  static void for_children(const Element& e, const std::string& path,
                           std::initializer_list<std::string_view> allowed, F&& visit,
                           bool containers = false) {
    std::vector<std::string_view> seen;
    std::size_t index = 0;
    for (const auto& c : e.children) {
      ++index;
      const auto child_path = path + "/" + c.name + "[" + std::to_string(index) + "]";
      if (std::find(allowed.begin(), allowed.end(), c.name) == allowed.end()) {
        fail(c, child_path, "unexpected element '" + c.name + "' in " + e.name);
      }
      if (containers || (allowed.size() == 1 && is_container(c.name))) {
        if (std::find(seen.begin(), seen.end(), c.name) != seen.end()) {
          fail(c, child_path, "repeated element '" + c.name + "'");
        }
        seen.push_back(c.name);
      }
      visit(c, child_path);
    }
  }

  static bool is_container(std::string_view name) {
    return name == "Packages" || name == "Classes";
  }

  static bool boolean(const Element& e, const std::string& path, const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    fail(e, path, "expected true or false, got '" + text + "'");
  }

  static AccessLevel access(const Element& e, const std::string& path, const std::string& text) {
    if (const auto level = parse_access_level(text)) return *level;
    fail(e, path, "unknown access level '" + text + "'");
  }

  static void leaf(const Element& e, const std::string& path) {
    if (!e.children.empty()) fail(e, path, "element '" + e.name + "' must be empty");
  }

  PackageDecl package(const Element& e, const std::string& path) {
    PackageDecl pkg;
    pkg.name = attrs(e, path, {"Name"})[0];
    for_children(e, path, {"Classes"}, [&](const Element& c, const std::string& p) {
      for_children(c, p, {"Class"}, [&](const Element& cl, const std::string& cp) {
        pkg.classes.push_back(klass(cl, cp));
      });
    });
    return pkg;
  }

  ClassDecl klass(const Element& e, const std::string& path) {
    ClassDecl cls;
    const auto a = attrs(e, path, {"Name", "AccessLevel", "isInterface", "Superclass"});
    cls.name = a[0];
    cls.access = access(e, path, a[1]);
    cls.is_interface = boolean(e, path, a[2]);
    cls.superclass = a[3];
    for_children(
        e, path, {"SuperInterfaces", "Comments", "Attributes", "Methods"},
        [&](const Element& c, const std::string& p) {
          if (c.name == "SuperInterfaces") {
            for_children(c, p, {"Interface"}, [&](const Element& i, const std::string& ip) {
              leaf(i, ip);
              cls.super_interfaces.push_back(attrs(i, ip, {"InterfaceName"})[0]);
            });
          } else if (c.name == "Comments") {
            comments(c, p, cls.comments);
          } else if (c.name == "Attributes") {
            for_children(c, p, {"Attribute"}, [&](const Element& at, const std::string& ap) {
              leaf(at, ap);
              const auto v = attrs(at, ap, {"Name", "AccessLevel", "Type", "isStatic"});
              cls.attributes.push_back(
                  {v[0], access(at, ap, v[1]), v[2], boolean(at, ap, v[3])});
            });
          } else {
            for_children(c, p, {"Method"}, [&](const Element& m, const std::string& mp) {
              cls.methods.push_back(method(m, mp));
            });
          }
        },
        true);
    return cls;
  }

  static void comments(const Element& e, const std::string& path, std::vector<std::string>& out) {
    for_children(e, path, {"Comment"}, [&](const Element& c, const std::string& p) {
      leaf(c, p);
      out.push_back(attrs(c, p, {"CommentText"})[0]);
    });
  }

  MethodDecl method(const Element& e, const std::string& path) {
    MethodDecl m;
    const auto a = attrs(e, path, {"Name", "AccessLevel", "ReturnType", "isStatic"});
    m.name = a[0];
    m.access = access(e, path, a[1]);
    m.return_type = a[2];
    m.is_static = boolean(e, path, a[3]);
    for_children(
        e, path,
        {"Parameters", "Comments", "LocalVariables", "AttributeAccesses", "MethodInvocations",
         "MethodAssignments", "MethodExceptions"},
        [&](const Element& c, const std::string& p) {
          if (c.name == "Parameters") {
            parameters(c, p, m);
          } else if (c.name == "Comments") {
            comments(c, p, m.comments);
          } else if (c.name == "LocalVariables") {
            for_children(c, p, {"LocalVariable"}, [&](const Element& v, const std::string& vp) {
              leaf(v, vp);
              const auto va = attrs(v, vp, {"Name", "Type"});
              m.local_variables.push_back({va[0], va[1]});
            });
          } else if (c.name == "AttributeAccesses") {
            for_children(c, p, {"Access", "AttributeAccess"},
                         [&](const Element& v, const std::string& vp) {
                           leaf(v, vp);
                           const auto va = attrs(v, vp, {"Name", "Type", "HowIsItUsed"});
                           m.accesses.push_back({va[0], va[1], va[2]});
                         });
          } else if (c.name == "MethodInvocations") {
            for_children(c, p, {"MethodInvocation"}, [&](const Element& v, const std::string& vp) {
              leaf(v, vp);
              const auto va = attrs(v, vp, {"Name", "Arguments"});
              m.invocations.push_back({va[0], va[1]});
            });
          } else if (c.name == "MethodAssignments") {
            for_children(c, p, {"Assignment"}, [&](const Element& v, const std::string& vp) {
              leaf(v, vp);
              const auto va = attrs(v, vp, {"LeftHandSide", "RightHandSide"});
              m.assignments.push_back({va[0], va[1]});
            });
          } else {
            for_children(c, p, {"Exception"}, [&](const Element& v, const std::string& vp) {
              leaf(v, vp);
              m.exceptions.push_back(attrs(v, vp, {"ExceptionType"})[0]);
            });
          }
        },
        true);
    return m;
  }

  static void parameters(const Element& e, const std::string& path, MethodDecl& m) {
    const auto declared = attrs(e, path, {"NumberOfParameters"})[0];
    for_children(e, path, {"Parameter"}, [&](const Element& v, const std::string& vp) {
      leaf(v, vp);
      const auto va = attrs(v, vp, {"Name", "Type"});
      m.parameters.push_back({va[0], va[1]});
    });
    const bool digits = !declared.empty() && declared.size() < 10 &&
                        std::all_of(declared.begin(), declared.end(),
                                    [](char c) { return c >= '0' && c <= '9'; });
    if (!digits || std::stoul(declared) != m.parameters.size()) {
      fail(e, path,
           "NumberOfParameters=\"" + declared + "\" but " + std::to_string(m.parameters.size()) +
               " Parameter elements");
    }
  }
};

}  // namespace

CodeModel read_code_text(std::string_view text) {
  const auto root = TreeBuilder().build(text);
  auto model = Converter().project(root);
  normalize(model);
  const auto problems = validate(model);
  if (!problems.empty()) {
    std::string message = "invalid model: " + problems.front();
    if (problems.size() > 1) message += " (+" + std::to_string(problems.size() - 1) + " more)";
    throw SchemaError(message, "Project");
  }
  return model;
}

CodeModel read_code_file(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed");
  return read_code_text(ss.str());
}

CodeModel read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read_code_file(in);
}

}  // namespace ooscan
