#include <CLI11.hpp>

#include <iostream>

#include "ooscan/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ooscan: parse, analyze and visualize Java-syntax source code"};
  app.require_subcommand(1);

  ooscan::RunConfig config;
  std::string input, output = "out", extensions = ".java", golden;
  bool serial = false;

  const std::pair<const char*, ooscan::Command> commands[] = {
      {"parse", ooscan::Command::Parse},
      {"analyze", ooscan::Command::Analyze},
      {"visualize", ooscan::Command::Visualize},
      {"evaluate", ooscan::Command::Evaluate},
      {"pipeline", ooscan::Command::Pipeline},
  };
  const char* help[] = {
      "write <name>.code.xml from a source directory",
      "write <name>.metrics.xml from a source directory or code file",
      "write the visualization files from a source directory or code file",
      "compare against --golden and write <name>.eval.xml",
      "parse, analyze and visualize (and evaluate when --golden is given)",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--in", input, "source directory or .xml code file")->required();
    sub->add_option("--out", output, "output root; files go to <out>/<name>/")
        ->capture_default_str();
    sub->add_option("--name", config.project_name, "project name (default: input directory name)");
    sub->add_option("--ext", extensions, "comma-separated source extensions")
        ->capture_default_str();
    sub->add_option("--golden", golden, "golden code file for evaluation");
    sub->add_option("--attribution", config.attribution, "text of the leading XML comment")
        ->capture_default_str();
    sub->add_flag("--strict", config.strict, "fail (exit 3) on any parse diagnostic");
    sub->add_flag("--quiet", config.quiet, "print only errors and timings");
    sub->add_flag("--serial", serial, "parse files on one thread");
    const auto command = commands[i].second;
    sub->callback([&config, command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ooscan::kExitSchema;
  }

  config.input_path = input;
  config.output_dir = output;
  config.golden_path = golden;
  config.parallel = !serial;
  config.extensions.clear();
  for (const auto& ext : CLI::detail::split(extensions, ',')) {
    auto e = CLI::detail::trim_copy(ext);
    if (e.empty()) continue;
    if (e.front() != '.') e.insert(e.begin(), '.');
    config.extensions.push_back(e);
  }
  return ooscan::run(config, std::cout, std::cerr).exit_code;
}
