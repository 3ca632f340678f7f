#include "ooscan/visualizer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "xml_builder.hpp"

namespace ooscan {

namespace {

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + '"';
}

// Escaped for a record label inside a quoted DOT string.
std::string record_field(std::string_view text) {
  std::string out;
  for (const char c : text) {
    if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out;
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string last_segment(std::string_view name) {
  const auto dot = name.rfind('.');
  return std::string(dot == std::string_view::npos ? name : name.substr(dot + 1));
}

std::string strip_generics(std::string_view type) {
  std::string out;
  int depth = 0;
  for (const char c : type) {
    if (c == '<') {
      ++depth;
    } else if (c == '>') {
      depth = std::max(0, depth - 1);
    } else if (depth == 0 && c != ' ') {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view file_name(VisualKind kind) {
  switch (kind) {
    case VisualKind::Organization: return "organization.dot";
    case VisualKind::Inheritance: return "inheritance.dot";
    case VisualKind::Invocation: return "invocation.dot";
    case VisualKind::Polymetric: return "polymetric.dot";
    case VisualKind::TagCloud: return "tagcloud.svg";
  }
  return "";
}

GraphDoc emit_organization(const CodeModel& model) {
  std::string o = "digraph organization {\n";
  o += "  node [shape=box, style=rounded];\n";
  o += "  subgraph cluster_project {\n";
  o += "    label=" + quote(model.project_name) + ";\n";
  for (std::size_t p = 0; p < model.packages.size(); ++p) {
    const auto& pkg = model.packages[p];
    const auto pid = "p" + std::to_string(p);
    o += "    subgraph cluster_" + pid + " {\n";
    o += "      label=" + quote(pkg.name) + ";\n";
    for (std::size_t c = 0; c < pkg.classes.size(); ++c) {
      const auto& cls = pkg.classes[c];
      const auto cid = pid + "_c" + std::to_string(c);
      o += "      subgraph cluster_" + cid + " {\n";
      o += "        label=" + quote(cls.name) + ";\n";
      for (std::size_t m = 0; m < cls.methods.size(); ++m) {
        o += "        " + cid + "_m" + std::to_string(m) + " [label=" +
             quote(cls.methods[m].name) + "];\n";
      }
      o += "      }\n";
    }
    o += "    }\n";
  }
  o += "  }\n}\n";
  return {VisualKind::Organization, std::move(o)};
}

GraphDoc emit_inheritance(const CodeModel& model) {
  std::string o = "digraph inheritance {\n";
  o += "  rankdir=BT;\n";
  o += "  node [shape=box];\n";

  std::map<const ClassDecl*, std::string> ids;
  for (std::size_t p = 0; p < model.packages.size(); ++p) {
    const auto& pkg = model.packages[p];
    o += "  subgraph cluster_p" + std::to_string(p) + " {\n";
    o += "    label=" + quote(pkg.name) + ";\n";
    for (std::size_t c = 0; c < pkg.classes.size(); ++c) {
      const auto& cls = pkg.classes[c];
      const auto id = "c" + std::to_string(p) + "_" + std::to_string(c);
      ids[&cls] = id;
      o += "    " + id + " [label=" + quote(cls.name) +
           (cls.is_interface ? ", style=dashed" : "") + "];\n";
    }
    o += "  }\n";
  }

  // Resolution: same package, then qualified or unique bare name, then the
  // last segment (same package first, then unique in the model).
  auto resolve = [&](const PackageDecl& pkg, const std::string& type) -> const ClassDecl* {
    for (const auto& c : pkg.classes) {
      if (c.name == type) return &c;
    }
    if (const auto* c = lookup_class(model, type)) return c;
    const auto simple = last_segment(type);
    for (const auto& c : pkg.classes) {
      if (c.name == simple) return &c;
    }
    return lookup_class(model, simple);
  };

  std::string edges;
  std::map<std::string, std::string> externals;
  std::string external_nodes;
  for (const auto& pkg : model.packages) {
    std::map<std::string, const ClassDecl*> by_qname;
    for (const auto& cls : pkg.classes) by_qname.emplace(qualified_name(pkg, cls), &cls);
    for (const auto& e : inheritance_edges(pkg)) {
      const auto& cls = *by_qname.at(e.subclass);
      const auto type = strip_generics(e.supertype);
      std::string target;
      if (const auto* super = resolve(pkg, type)) {
        target = ids.at(super);
      } else {
        auto [it, inserted] = externals.try_emplace(type, "x" + std::to_string(externals.size()));
        if (inserted) {
          external_nodes += "  " + it->second + " [label=" + quote(type) +
                            ", shape=box, style=dotted];\n";
        }
        target = it->second;
      }
      edges += "  " + ids.at(&cls) + " -> " + target +
               (e.kind == InheritanceKind::Extends ? " [style=solid, arrowhead=empty];\n"
                                                   : " [style=dashed, arrowhead=empty];\n");
    }
  }
  o += external_nodes + edges + "}\n";
  return {VisualKind::Inheritance, std::move(o)};
}

GraphDoc emit_invocation(const CodeModel& model) {
  struct MethodNode {
    std::string id;
    std::string label;
    std::vector<const MethodDecl*> decls;
  };
  std::vector<MethodNode> nodes;
  std::unordered_map<std::string, std::vector<std::size_t>> by_name;
  for (const auto& pkg : model.packages) {
    for (const auto& cls : pkg.classes) {
      std::map<std::string, std::size_t> local;
      for (const auto& m : cls.methods) {
        auto [it, inserted] = local.try_emplace(m.name, nodes.size());
        if (inserted) {
          nodes.push_back({"m" + std::to_string(nodes.size()), cls.name + "." + m.name, {}});
          by_name[m.name].push_back(it->second);
        }
        nodes[it->second].decls.push_back(&m);
      }
    }
  }

  std::string o = "digraph invocation {\n";
  o += "  node [shape=box];\n";
  for (const auto& n : nodes) o += "  " + n.id + " [label=" + quote(n.label) + "];\n";

  std::map<std::string, std::string> externals;
  std::map<std::string, std::string> hubs;
  std::string extra_nodes;
  std::string candidate_edges;
  std::string edges;
  for (const auto& caller : nodes) {
    std::vector<std::pair<std::string, std::size_t>> counts;
    auto bump = [&counts](const std::string& target) {
      for (auto& [t, n] : counts) {
        if (t == target) {
          ++n;
          return;
        }
      }
      counts.emplace_back(target, 1);
    };
    for (const auto* decl : caller.decls) {
      for (const auto& call : decl->invocations) {
        const auto it = by_name.find(call.name);
        const auto matches = it == by_name.end() ? 0 : it->second.size();
        if (matches == 1) {
          bump(nodes[it->second.front()].id);
        } else if (matches == 0) {
          auto [e, inserted] =
              externals.try_emplace(call.name, "x" + std::to_string(externals.size()));
          if (inserted) {
            extra_nodes += "  " + e->second + " [label=" + quote(call.name) +
                           ", shape=ellipse, style=dashed];\n";
          }
          bump(e->second);
        } else {
          auto [h, inserted] = hubs.try_emplace(call.name, "a" + std::to_string(hubs.size()));
          if (inserted) {
            extra_nodes += "  " + h->second + " [label=" + quote(call.name + "?") +
                           ", shape=diamond, ambiguous=true];\n";
            for (const auto idx : it->second) {
              candidate_edges +=
                  "  " + h->second + " -> " + nodes[idx].id + " [style=dotted, ambiguous=true];\n";
            }
          }
          bump(h->second);
        }
      }
    }
    for (const auto& [target, n] : counts) {
      edges += "  " + caller.id + " -> " + target + " [label=\"" + std::to_string(n) + "\"];\n";
    }
  }
  o += extra_nodes + edges + candidate_edges + "}\n";
  return {VisualKind::Invocation, std::move(o)};
}

GraphDoc emit_polymetric(std::span<const PackageMetrics> packages) {
  std::string o = "digraph polymetric {\n";
  o += "  node [shape=record, fixedsize=true];\n";
  if (packages.empty()) {
    o += "  empty [label=\"no packages\", shape=box, fixedsize=false];\n";
  }
  std::vector<const PackageMetrics*> sorted;
  for (const auto& p : packages) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto* a, const auto* b) { return a->package_name < b->package_name; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& p = *sorted[i];
    const auto width = std::max(1.0, kPolymetricWidthPerClass * static_cast<double>(p.noc));
    const auto height = std::max(1.0, kPolymetricHeightPerMethod * static_cast<double>(p.nom));
    std::string label = "{" + record_field(p.package_name);
    const std::pair<std::string_view, std::size_t> rows[] = {
        {"LOC", p.loc},   {"NOC", p.noc},   {"NOA", p.noa}, {"NOM", p.nom},  {"NOCo", p.noco},
        {"NOLv", p.nolv}, {"NOIn", p.noin}, {"NOI", p.noi}, {"NOAc", p.noac}};
    for (const auto& [name, value] : rows) {
      label += "|" + std::string(name) + ": " + std::to_string(value);
    }
    label += "}";
    o += "  p" + std::to_string(i) + " [label=\"" + label + "\", width=" + fixed(width, 2) +
         ", height=" + fixed(height, 2) + "];\n";
  }
  o += "}\n";
  return {VisualKind::Polymetric, std::move(o)};
}

std::string_view to_string(TagCategory category) {
  switch (category) {
    case TagCategory::Package: return "package";
    case TagCategory::Class: return "class";
    case TagCategory::Attribute: return "attribute";
    case TagCategory::Method: return "method";
  }
  return "unknown";
}

std::vector<TagEntry> tag_entries(const CodeModel& model) {
  std::map<std::pair<std::string, TagCategory>, std::size_t> declared;
  std::unordered_map<std::string, std::size_t> used;
  for (const auto& pkg : model.packages) {
    ++declared[{last_segment(pkg.name), TagCategory::Package}];
    for (const auto& cls : pkg.classes) {
      ++declared[{last_segment(cls.name), TagCategory::Class}];
      for (const auto& a : cls.attributes) ++declared[{a.name, TagCategory::Attribute}];
      for (const auto& m : cls.methods) {
        ++declared[{m.name, TagCategory::Method}];
        for (const auto& a : m.accesses) ++used[a.name];
        for (const auto& i : m.invocations) ++used[i.name];
      }
    }
  }
  std::vector<TagEntry> out;
  out.reserve(declared.size());
  for (const auto& [key, count] : declared) {
    const auto u = used.find(key.first);
    out.push_back({key.first, count + (u == used.end() ? 0 : u->second), key.second});
  }
  std::stable_sort(out.begin(), out.end(), [](const TagEntry& a, const TagEntry& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.category < b.category;
  });
  return out;
}

TagCloud emit_tagcloud(const CodeModel& model, const TagCloudOptions& options) {
  TagCloud cloud;
  cloud.doc.kind = VisualKind::TagCloud;
  cloud.entries = tag_entries(model);

  std::size_t lo = 0, hi = 0;
  if (!cloud.entries.empty()) {
    hi = cloud.entries.front().frequency;
    lo = cloud.entries.back().frequency;
  }
  auto font = [&](std::size_t f) {
    if (hi == lo) return options.max_font;
    return options.min_font + (options.max_font - options.min_font) *
                                  static_cast<double>(f - lo) / static_cast<double>(hi - lo);
  };

  // Flow layout with an estimated glyph width of 0.6 em.
  constexpr double kMargin = 10.0;
  constexpr double kGap = 12.0;
  std::string body;
  double x = kMargin, line_top = kMargin, line_height = 0.0;
  for (const auto& e : cloud.entries) {
    const double size = font(e.frequency);
    const double note = size * 0.5;
    const auto annotation = "[" + std::to_string(e.frequency) + "]";
    const double w = 0.6 * size * static_cast<double>(e.tag.size()) +
                     0.6 * note * static_cast<double>(annotation.size() + 1);
    if (x > kMargin && x + w > options.width - kMargin) {
      x = kMargin;
      line_top += line_height + 4.0;
      line_height = 0.0;
    }
    line_height = std::max(line_height, size * 1.2);
    body += "  <text x=\"" + fixed(x, 1) + "\" y=\"" + fixed(line_top + size, 1) +
            "\" font-size=\"" + fixed(size, 1) + "\" class=\"" +
            std::string(to_string(e.category)) + "\">" + detail::escape_xml(e.tag) +
            " <tspan fill=\"red\" font-size=\"" + fixed(note, 1) + "\">" + annotation +
            "</tspan></text>\n";
    x += w + kGap;
  }
  const double height = cloud.entries.empty() ? 0.0 : line_top + line_height + kMargin;

  auto& o = cloud.doc.body;
  o = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(options.width, 0) +
      "\" height=\"" + fixed(height, 0) + "\" viewBox=\"0 0 " + fixed(options.width, 0) + " " +
      fixed(height, 0) + "\" font-family=\"sans-serif\">\n";
  if (!cloud.entries.empty()) {
    o += "  <style>.package{fill:#1f4e79}.class{fill:#2e7d32}.attribute{fill:#6a1b9a}"
         ".method{fill:#e65100}</style>\n";
  }
  o += body + "</svg>\n";
  return cloud;
}

std::string tagcloud_csv(std::span<const TagEntry> entries) {
  auto field = [](std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + '"';
  };
  std::string o = "tag,frequency,category\n";
  for (const auto& e : entries) {
    o += field(e.tag) + "," + std::to_string(e.frequency) + "," + std::string(to_string(e.category)) +
         "\n";
  }
  return o;
}

}  // namespace ooscan
