#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arcs/error.hpp"
#include "arcs/version.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

const char* description(const std::string& command) {
  if (command == "synth") return "Generate a synthetic corpus with gold labels, index entries and annotations";
  if (command == "segment") return "Split transcripts into question-answer segments";
  if (command == "filter") return "Keep segments with religious content";
  if (command == "label") return "Assign practice and belief valence to segments";
  if (command == "trajectories") return "Build per-testimony trajectories from labels";
  if (command == "taxonomy") return "Classify trajectory structures and write distributions";
  if (command == "cluster") return "DTW distance matrices, HDBSCAN and agglomerative clustering";
  if (command == "evaluate") return "Extract reference trajectories and compare against baselines";
  if (command == "iaa") return "Inter-annotator agreement";
  if (command == "adjudicate") return "Resolve annotations into gold labels and dataset splits";
  if (command == "report") return "Render plots, tables and the run manifest";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Religious trajectory analysis pipeline"};
  app.set_version_flag("--version", std::string("arcs ") + arcs::kVersion);
  app.require_subcommand(0, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool print_defaults = false;
  app.add_option("-c,--config", config_path, "JSON configuration file (default: $ARCS_CONFIG)");
  app.add_option("--set", overrides, "Override a configuration field, e.g. --set belief.window=5");
  app.add_flag("--print-default-config", print_defaults, "Print the built-in configuration and exit");

  std::optional<std::string> labeler;
  arcs::cli::CommandOptions options;
  for (const std::string& name : arcs::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, description(name));
    if (name == "label" || name == "filter") {
      sub->add_option("--labeler", labeler, "oracle or endpoint")->check(CLI::IsMember({"oracle", "endpoint"}));
    }
    if (name == "label") {
      sub->add_flag("--all", options.all_segments, "Label every segment, not only filtered ones");
      sub->add_flag("--overprediction", options.overprediction,
                    "Also compare labeling all segments against filtered segments");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : arcs::cli::kConfigError;
  }

  if (print_defaults) {
    std::cout << arcs::cli::default_config_json();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return arcs::cli::kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (labeler) overrides.push_back("labeler.kind=\"" + *labeler + "\"");

  arcs::cli::PipelineConfig config;
  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("ARCS_CONFIG"); env != nullptr && *env != '\0') config_path = env;
    }
    config = config_path.empty() ? arcs::cli::load_config("", overrides)
                                 : arcs::cli::load_config_file(config_path, overrides);
  } catch (const arcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return arcs::cli::kConfigError;
  }
  return arcs::cli::run_guarded(command, config, options, std::cerr);
}
