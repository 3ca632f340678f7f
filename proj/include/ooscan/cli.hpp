#pragma once

// Command runner behind the ooscan executable: parse, analyze, visualize,
// evaluate and the full pipeline, writing into out/<project>/.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ooscan/xmlio.hpp"

namespace ooscan {

enum class Command { Parse, Analyze, Visualize, Evaluate, Pipeline };

std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::Pipeline;
  std::filesystem::path input_path;   // source directory or .xml code file
  std::string project_name;           // empty: input directory name
  std::filesystem::path output_dir = "out";
  std::vector<std::string> extensions{".java"};
  std::string attribution{kDefaultAttribution};
  std::filesystem::path golden_path;  // evaluate; optional for pipeline
  bool strict = false;                // any parse diagnostic fails the run
  bool quiet = false;                 // only errors and timings
  bool parallel = true;
};

// kExitSchema also covers command-line misuse.
enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitSchema = 2, kExitStrict = 3 };

struct RunResult {
  int exit_code = kExitOk;
  std::filesystem::path workspace;
  std::vector<std::filesystem::path> artifacts;  // in write order
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// Runs one command. Progress and timings go to `out`, diagnostics to `err`.
RunResult run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Workspace directory name for a project: characters outside
/// [A-Za-z0-9._-] become '_'.
std::string sanitize_name(std::string_view name);

}  // namespace ooscan
