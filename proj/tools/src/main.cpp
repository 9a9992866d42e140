#include <iostream>

#include <CLI11.hpp>

#include "gabdual_cli/experiments.hpp"

int main(int argc, char** argv) {
  using namespace gabdual::cli;
  CLI::App app{"gabdual: optimized dual and tight Gabor windows"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_out;
  auto* run = app.add_subcommand("run", "solve the experiment described by a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", run_out, "output directory (overrides [output] dir)");

  std::string preset;
  std::string preset_out = ".";
  std::uint64_t seed = 0;
  auto* pre = app.add_subcommand("preset", "run a built-in experiment");
  pre->add_option("name", preset, "preset name")->required()->check(CLI::IsMember(preset_names()));
  pre->add_option("--out", preset_out, "output directory");
  pre->add_option("--seed", seed, "random seed");

  std::string window_csv;
  long Lh = 0;
  auto* met = app.add_subcommand("metrics", "recompute the metrics of a window.csv file");
  met->add_option("window", window_csv, "window.csv file")->required();
  met->add_option("--Lh", Lh, "reference length of the -3 dB width")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run) {
    return guarded(
        [&] {
          ExperimentConfig cfg = load_config(config_path);
          if (!run_out.empty()) cfg.output = run_out;
          return run_config(cfg, std::cout);
        },
        std::cerr);
  }
  if (*pre) return guarded([&] { return run_preset(preset, preset_out, seed, std::cout); }, std::cerr);
  return guarded([&] { return metrics_command(window_csv, Lh, std::cout); }, std::cerr);
}
