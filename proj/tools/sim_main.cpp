// sim: run normative-simulation experiments, validate configs, render reports.
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "normsim/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multiagent normative simulation with rule learning and value-based rationales"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Run every society x run index and write CSVs under output_dir");
  run->add_option("--config", config, "Experiment config (JSON)")->required();
  run->add_option("--set", overrides, "Override a config key, e.g. world.steps=1000")->allow_extra_args(false);
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string dir;
  auto* report = app.add_subcommand("report", "Render a Markdown report from an output directory");
  report->add_option("--dir", dir, "Directory holding per_run.csv, stats.csv and norms.csv")->required();

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", config, "Experiment config (JSON)")->required();
  validate->add_option("--set", overrides, "Override a config key")->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : normsim::kExitConfig;
  }

  if (*run) return normsim::cmd_run(config, overrides, jobs, std::cout, std::cerr);
  if (*report) return normsim::cmd_report(dir, std::cout, std::cerr);
  return normsim::cmd_validate(config, overrides, std::cout, std::cerr);
}
