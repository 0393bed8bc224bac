// Command-line driver: run experiment configurations, execute named presets,
// list presets.  Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tikhlab/runner.hpp"

namespace {

std::string default_output_root() {
  if (const char* env = std::getenv("TIKHLAB_OUT_ROOT")) return env;
  return "out";
}

int execute(tikhlab::ExperimentConfig cfg) {
  try {
    const tikhlab::RunOutcome outcome = tikhlab::run(cfg);
    std::cout << "wrote " << outcome.files_written.size() << " files to "
              << cfg.output_directory << (outcome.partial ? " (partial results flagged)" : "")
              << "\n";
    return 0;
  } catch (const tikhlab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tikhlab: numerical laboratory for variational regularization with general "
               "residual terms"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a configuration file");
  run_cmd->add_option("config", config_path, "configuration file")->required();

  std::string preset_name;
  std::string out_dir;
  std::uint64_t seed = 0;
  auto* preset_cmd = app.add_subcommand("preset", "run a named preset");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--out", out_dir, "output directory");
  auto* seed_opt = preset_cmd->add_option("--seed", seed, "override the task seed");

  auto* list_cmd = app.add_subcommand("list-presets", "list available presets");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    for (const tikhlab::Preset& p : tikhlab::presets())
      std::cout << p.name << "\t" << p.description << "\n";
    return 0;
  }

  if (run_cmd->parsed()) {
    try {
      return execute(tikhlab::load_config_file(config_path));
    } catch (const tikhlab::ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return 2;
    }
  }

  // preset
  try {
    tikhlab::ExperimentConfig cfg = tikhlab::preset_by_name(preset_name).config;
    cfg.output_directory = out_dir.empty()
                               ? default_output_root() + "/" + preset_name
                               : out_dir;
    if (seed_opt->count() > 0) cfg.task.seed = seed;
    return execute(std::move(cfg));
  } catch (const tikhlab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
