// hetsim command line: `simulate <config>` runs a sweep of HetNet mobility
// simulations, `report <dir>` re-aggregates saved KPI logs.
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "hetsim/config.hpp"
#include "hetsim/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-tier HetNet mobility-management simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  uint64_t seed = 0;
  bool seed_set = false;
  bool dry_run = false;
  int workers = 1;

  CLI::App* simulate = app.add_subcommand("simulate", "run the experiment in a config file");
  simulate->add_option("config", config_path, "config file (JSON)")->required();
  simulate->add_option("--seed", seed, "run a single seed, overriding the config seed list")
      ->each([&](const std::string&) { seed_set = true; });
  simulate->add_option("--out", out_dir, "output directory override");
  simulate->add_flag("--dry-run", dry_run, "print the planned runs without executing");
  simulate->add_option("--workers", workers, "parallel simulation workers")
      ->check(CLI::PositiveNumber);

  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "re-aggregate KPI logs in a directory");
  report->add_option("dir", report_dir, "directory holding *.log files")->required();

  CLI11_PARSE(app, argc, argv);

  if (report->parsed()) return hetsim::reaggregate_directory(report_dir);

  std::vector<std::string> warnings;
  hetsim::RunConfig cfg;
  try {
    cfg = hetsim::parse_config(config_path, &warnings);
  } catch (const hetsim::ConfigErrorException& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  hetsim::ExperimentOptions opts;
  if (seed_set) opts.seed_override = seed;
  opts.dry_run = dry_run;
  opts.workers = workers;
  if (!out_dir.empty()) {
    opts.output_dir_override = out_dir;
  } else if (const char* env_out = std::getenv("HETSIM_OUT")) {
    opts.output_dir_override = env_out;
  }

  try {
    return hetsim::run_experiment(cfg, opts);
  } catch (const std::exception& e) {
    std::cerr << "simulation failure: " << e.what() << "\n";
    return 2;
  }
}
