#include "ooscan/analyzer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_map>

#include "xml_builder.hpp"

namespace ooscan {

namespace {

std::unordered_map<std::string, std::size_t> loc_by_package(std::span<const SourceUnit> units) {
  std::unordered_map<std::string, std::size_t> out;
  for (const auto& u : units) {
    if (!u.package_name.empty()) out[u.package_name] += u.line_count_code;
  }
  return out;
}

PackageMetrics package_metrics(const PackageDecl& pkg, std::size_t loc) {
  PackageMetrics m;
  m.package_name = pkg.name;
  m.loc = loc;
  m.noc = pkg.classes.size();
  for (const auto& cls : pkg.classes) {
    m.noa += cls.attributes.size();
    m.nom += cls.methods.size();
    m.noco += cls.comments.size();
    for (const auto& method : cls.methods) {
      m.noco += method.comments.size();
      m.nolv += method.local_variables.size();
      m.noi += method.invocations.size();
      m.noac += method.accesses.size();
    }
  }
  m.noin = inheritance_edges(pkg).size();
  return m;
}

}  // namespace

MetricsReport compute_metrics(const CodeModel& model, std::span<const SourceUnit> units) {
  auto report = compute_metrics(model);
  report.loc_available = true;
  for (const auto& u : units) report.loc += u.line_count_code;
  return report;
}

MetricsReport compute_metrics(const CodeModel& model) {
  MetricsReport r;
  r.project_name = model.project_name;
  r.loc_available = false;
  r.nop = model.packages.size();
  for (const auto& pkg : model.packages) {
    for (const auto& cls : pkg.classes) {
      ++r.noc;
      r.noa += cls.attributes.size();
      r.noco += cls.comments.size();
      for (const auto& m : cls.methods) {
        ++r.nom;
        r.noco += m.comments.size();
        r.nolv += m.local_variables.size();
        r.noi += m.invocations.size();
        r.noac += m.accesses.size();
      }
    }
  }
  r.noin = inheritance_edges(model).size();
  return r;
}

std::vector<PackageMetrics> compute_package_metrics_serial(const CodeModel& model,
                                                           std::span<const SourceUnit> units) {
  const auto loc = loc_by_package(units);
  std::vector<PackageMetrics> out;
  out.reserve(model.packages.size());
  for (const auto& pkg : model.packages) {
    const auto it = loc.find(pkg.name);
    out.push_back(package_metrics(pkg, it == loc.end() ? 0 : it->second));
  }
  return out;
}

std::vector<PackageMetrics> compute_package_metrics(const CodeModel& model,
                                                    std::span<const SourceUnit> units) {
  const auto loc = loc_by_package(units);
  std::vector<PackageMetrics> out(model.packages.size());
  const auto n = static_cast<long>(model.packages.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto& pkg = model.packages[static_cast<std::size_t>(i)];
    const auto it = loc.find(pkg.name);
    out[static_cast<std::size_t>(i)] = package_metrics(pkg, it == loc.end() ? 0 : it->second);
  }
  return out;
}

std::string metrics_file_text(const MetricsReport& r, const WriteOptions& options) {
  detail::XmlBuilder x(true);
  x.comment(options.attribution);
  x.open("Project", {{"ProjectName", r.project_name}});
  x.open("Metrics");
  const std::pair<std::string_view, std::pair<std::string_view, std::size_t>> rows[] = {
      {"LinesOfCode", {"LOC", r.loc}},
      {"NumberOfPackages", {"NOP", r.nop}},
      {"NumberOfClasses", {"NOC", r.noc}},
      {"NumberOfAttributes", {"NOA", r.noa}},
      {"NumberOfMethods", {"NOM", r.nom}},
      {"NumberOfComments", {"NOCo", r.noco}},
      {"NumberOfLocalVariables", {"NOLv", r.nolv}},
      {"NumberOfInheritances", {"NOIn", r.noin}},
      {"NumberOfInvocations", {"NOI", r.noi}},
      {"NumberOfAccesses", {"NOAc", r.noac}},
  };
  for (const auto& [element, metric] : rows) {
    x.leaf(element, {{metric.first, std::to_string(metric.second)}});
  }
  x.close("Metrics");
  x.close("Project");
  return x.take();
}

std::size_t write_metrics_file(const MetricsReport& report, std::ostream& out,
                               const WriteOptions& options) {
  return write_all(out, metrics_file_text(report, options));
}

// -- evaluation --------------------------------------------------------------

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Packages: return "packages";
    case Category::Classes: return "classes";
    case Category::Attributes: return "attributes";
    case Category::Methods: return "methods";
    case Category::Inheritance: return "inheritance";
    case Category::Invocations: return "invocations";
    case Category::Accesses: return "accesses";
  }
  return "unknown";
}

Score make_score(std::size_t extracted, std::size_t golden, std::size_t matched) {
  Score s{extracted, golden, matched, 1.0, 1.0, 1.0};
  if (extracted == 0 && golden == 0) return s;
  s.precision = extracted == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(extracted);
  s.recall = golden == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(golden);
  const double sum = s.precision + s.recall;
  s.f_measure = sum == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / sum;
  return s;
}

std::vector<std::string> identity_keys(const CodeModel& model, Category category) {
  std::vector<std::string> keys;
  for (const auto& pkg : model.packages) {
    if (category == Category::Packages) {
      keys.push_back(pkg.name);
      continue;
    }
    for (const auto& cls : pkg.classes) {
      const auto qname = qualified_name(pkg, cls);
      switch (category) {
        case Category::Classes:
          keys.push_back(qname);
          break;
        case Category::Attributes:
          for (const auto& a : cls.attributes) keys.push_back(qname + "#" + a.name);
          break;
        case Category::Methods:
          for (const auto& m : cls.methods) keys.push_back(qname + "." + m.signature());
          break;
        case Category::Invocations:
          for (const auto& m : cls.methods) {
            const auto mkey = qname + "." + m.signature();
            for (const auto& i : m.invocations) keys.push_back(mkey + " -> " + i.name + i.arguments);
          }
          break;
        case Category::Accesses:
          for (const auto& m : cls.methods) {
            const auto mkey = qname + "." + m.signature();
            for (const auto& a : m.accesses) keys.push_back(mkey + " @ " + a.name + " | " + a.how_used);
          }
          break;
        default:
          break;
      }
    }
  }
  if (category == Category::Inheritance) {
    for (const auto& e : inheritance_edges(model)) {
      keys.push_back(e.subclass + " " + std::string(to_string(e.kind)) + " " + e.supertype);
    }
  }
  std::map<std::string, std::size_t> seen;
  for (auto& k : keys) {
    const auto n = seen[k]++;
    k += " #" + std::to_string(n);
  }
  return keys;
}

EvaluationReport evaluate(const CodeModel& extracted, const CodeModel& golden) {
  EvaluationReport report;
  std::size_t total_e = 0, total_g = 0, total_m = 0;
  for (const auto c : kCategories) {
    auto e = identity_keys(extracted, c);
    auto g = identity_keys(golden, c);
    std::sort(e.begin(), e.end());
    std::sort(g.begin(), g.end());
    std::vector<std::string> common;
    std::set_intersection(e.begin(), e.end(), g.begin(), g.end(), std::back_inserter(common));
    report.categories[static_cast<std::size_t>(c)] = make_score(e.size(), g.size(), common.size());
    total_e += e.size();
    total_g += g.size();
    total_m += common.size();
  }
  report.micro = make_score(total_e, total_g, total_m);
  return report;
}

std::string evaluation_file_text(const EvaluationReport& report, std::string_view project_name,
                                 const WriteOptions& options) {
  auto fixed = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  auto row = [&](detail::XmlBuilder& x, std::string_view element, std::string_view name,
                 const Score& s) {
    x.leaf(element, {{"Name", name},
                     {"Extracted", std::to_string(s.extracted)},
                     {"Golden", std::to_string(s.golden)},
                     {"Matched", std::to_string(s.matched)},
                     {"Precision", fixed(s.precision)},
                     {"Recall", fixed(s.recall)},
                     {"FMeasure", fixed(s.f_measure)}});
  };
  detail::XmlBuilder x(true);
  x.comment(options.attribution);
  x.open("Evaluation", {{"ProjectName", project_name}});
  for (const auto c : kCategories) row(x, "Category", to_string(c), report[c]);
  row(x, "MicroAverage", "total", report.micro);
  x.close("Evaluation");
  return x.take();
}

}  // namespace ooscan
