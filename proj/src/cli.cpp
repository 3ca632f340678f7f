#include "ooscan/cli.hpp"

#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>

#include "ooscan/analyzer.hpp"
#include "ooscan/parser.hpp"
#include "ooscan/visualizer.hpp"

namespace ooscan {

namespace fs = std::filesystem;

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Parse: return "parse";
    case Command::Analyze: return "analyze";
    case Command::Visualize: return "visualize";
    case Command::Evaluate: return "evaluate";
    case Command::Pipeline: return "pipeline";
  }
  return "";
}

std::string sanitize_name(std::string_view name) {
  std::string out;
  for (const char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "project";
  return out;
}

namespace {

class StrictFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_code_file(const fs::path& p) {
  std::error_code ec;
  return p.extension() == ".xml" && fs::is_regular_file(p, ec);
}

std::string directory_name(const fs::path& p) {
  auto name = p.filename();
  if (name.empty() || name == "." || name == "..") {
    name = fs::weakly_canonical(p).filename();
  }
  return name.string();
}

class Runner {
 public:
  Runner(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err) {}

  RunResult run() {
    try {
      dispatch();
    } catch (const StrictFailure& e) {
      err_ << "ooscan: " << e.what() << "\n";
      result_.exit_code = kExitStrict;
    } catch (const UsageError& e) {
      err_ << "ooscan: " << e.what() << "\n";
      result_.exit_code = kExitSchema;
    } catch (const SchemaError& e) {
      err_ << "ooscan: " << e.what() << "\n";
      result_.exit_code = kExitSchema;
    } catch (const IoError& e) {
      err_ << "ooscan: " << e.what() << "\n";
      result_.exit_code = kExitIo;
    } catch (const fs::filesystem_error& e) {
      err_ << "ooscan: " << e.what() << "\n";
      result_.exit_code = kExitIo;
    }
    return std::move(result_);
  }

 private:
  struct Loaded {
    CodeModel model;
    std::vector<SourceUnit> units;
    bool from_sources = false;
  };

  template <class F>
  auto timed(std::string_view stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      result_.timings_ms.emplace_back(std::string(stage), ms.count());
      char buf[96];
      std::snprintf(buf, sizeof buf, "[time] %-10s %10.1f ms\n", std::string(stage).c_str(),
                    ms.count());
      out_ << buf;
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto value = f();
      finish();
      return value;
    }
  }

  void dispatch() {
    if (config_.input_path.empty()) throw UsageError("no input given (--in)");
    switch (config_.command) {
      case Command::Parse: {
        if (is_code_file(config_.input_path)) {
          throw IoError("parse expects a source directory: " + config_.input_path.string());
        }
        auto loaded = load();
        write_code(loaded);
        check_strict();
        break;
      }
      case Command::Analyze: {
        auto loaded = load();
        analyze(loaded);
        check_strict();
        break;
      }
      case Command::Visualize: {
        auto loaded = load();
        visualize(loaded);
        check_strict();
        break;
      }
      case Command::Evaluate: {
        if (config_.golden_path.empty()) throw UsageError("evaluate needs --golden <code file>");
        auto loaded = load();
        evaluate(loaded);
        check_strict();
        break;
      }
      case Command::Pipeline: {
        auto loaded = load();
        write_code(loaded);
        analyze(loaded);
        visualize(loaded);
        if (!config_.golden_path.empty()) evaluate(loaded);
        check_strict();
        break;
      }
    }
    if (!config_.quiet) {
      for (const auto& a : result_.artifacts) out_ << "wrote " << a.string() << "\n";
    }
  }

  Loaded load() {
    Loaded loaded;
    const auto& in = config_.input_path;
    if (is_code_file(in)) {
      loaded.model = timed("load", [&] { return read_code(in); });
      if (!config_.project_name.empty()) loaded.model.project_name = config_.project_name;
    } else {
      std::error_code ec;
      if (!fs::is_directory(in, ec)) {
        throw IoError("input is neither a directory nor a .xml code file: " + in.string());
      }
      const auto name =
          config_.project_name.empty() ? directory_name(in) : config_.project_name;
      ParseOptions options;
      options.extensions = config_.extensions;
      options.parallel = config_.parallel;
      auto parsed = timed("parse", [&] { return parse_project(in, name, options); });
      for (const auto& d : parsed.diagnostics) {
        if (d.severity == Severity::Error || !config_.quiet) err_ << d.format() << "\n";
      }
      diagnostic_count_ += parsed.diagnostics.size();
      loaded.model = std::move(parsed.model);
      loaded.units = std::move(parsed.units);
      loaded.from_sources = true;
    }
    workspace_ = config_.output_dir / sanitize_name(loaded.model.project_name);
    fs::create_directories(workspace_);
    result_.workspace = workspace_;
    return loaded;
  }

  static CodeModel read_code(const fs::path& p) {
    try {
      return read_code_file(p);
    } catch (const SchemaError& e) {
      throw SchemaError(p.string() + ": " + e.what());
    }
  }

  void check_strict() const {
    if (config_.strict && diagnostic_count_ > 0) {
      throw StrictFailure(std::to_string(diagnostic_count_) +
                          " parse diagnostic(s) with --strict");
    }
  }

  void emit(const std::string& file, std::string_view bytes) {
    const auto path = workspace_ / file;
    write_file(path, bytes);
    result_.artifacts.push_back(path);
  }

  std::string base_name(const Loaded& l) const { return sanitize_name(l.model.project_name); }

  WriteOptions write_options() const { return WriteOptions{config_.attribution}; }

  void write_code(const Loaded& l) {
    timed("write", [&] { emit(base_name(l) + ".code.xml", code_file_text(l.model, write_options())); });
  }

  void analyze(const Loaded& l) {
    timed("analyze", [&] {
      const auto report = l.from_sources ? compute_metrics(l.model, l.units)
                                         : compute_metrics(l.model);
      if (!report.loc_available) {
        err_ << "ooscan: note: LOC unavailable for a model loaded from a code file; reported as 0\n";
      }
      emit(base_name(l) + ".metrics.xml", metrics_file_text(report, write_options()));
    });
  }

  void visualize(const Loaded& l) {
    timed("visualize", [&] {
      const auto packages = compute_package_metrics(l.model, l.units);
      emit(std::string(file_name(VisualKind::Organization)), emit_organization(l.model).body);
      emit(std::string(file_name(VisualKind::Inheritance)), emit_inheritance(l.model).body);
      emit(std::string(file_name(VisualKind::Invocation)), emit_invocation(l.model).body);
      emit(std::string(file_name(VisualKind::Polymetric)), emit_polymetric(packages).body);
      const auto cloud = emit_tagcloud(l.model);
      emit(std::string(file_name(VisualKind::TagCloud)), cloud.doc.body);
      emit("tagcloud.csv", tagcloud_csv(cloud.entries));
    });
  }

  void evaluate(const Loaded& l) {
    const auto golden = timed("load", [&] { return read_code(config_.golden_path); });
    timed("evaluate", [&] {
      const auto report = ooscan::evaluate(l.model, golden);
      emit(base_name(l) + ".eval.xml",
           evaluation_file_text(report, l.model.project_name, write_options()));
      print_table(report);
    });
  }

  void print_table(const EvaluationReport& report) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %10s %10s %10s %9s %9s %9s\n", "category", "extracted",
                  "golden", "matched", "precision", "recall", "F");
    out_ << buf;
    auto row = [&](std::string_view name, const Score& s) {
      std::snprintf(buf, sizeof buf, "%-12s %10zu %10zu %10zu %9.4f %9.4f %9.4f\n",
                    std::string(name).c_str(), s.extracted, s.golden, s.matched, s.precision,
                    s.recall, s.f_measure);
      out_ << buf;
    };
    for (const auto c : kCategories) row(to_string(c), report[c]);
    row("micro", report.micro);
  }

  const RunConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  RunResult result_;
  fs::path workspace_;
  std::size_t diagnostic_count_ = 0;
};

}  // namespace

RunResult run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Runner(config, out, err).run();
}

}  // namespace ooscan
