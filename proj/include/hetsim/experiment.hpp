// Sweep expansion and experiment execution: one simulation per
// (sweep point, seed), reports + binary logs + summary.csv in the output
// directory.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/metrics.hpp"

namespace hetsim {

struct SweepPoint {
  std::string label;  // "axis=value__..__seed=S"
  RunConfig config;
  uint64_t seed = 0;
};

struct ExperimentOptions {
  std::string output_dir_override;  // from --out or HETSIM_OUT
  std::optional<uint64_t> seed_override;
  bool dry_run = false;
  int workers = 1;
};

// Short sweep-axis aliases accepted in the sweep section, resolved onto
// config paths. Dotted paths ("scenario.hotspot_radius_m") pass through.
std::string resolve_axis_path(const std::string& axis);

// Expands sweep axes (cross product, axis-name order, declared value order)
// times the seed list.
std::vector<SweepPoint> expand_sweep(const RunConfig& base, std::string* error);

// Runs every point, writes <label>.json / <label>.log / <label>_cdf.csv,
// effective_config.json and summary.csv. Returns a process exit code:
// 0 ok, 2 any simulation failure (partial results are kept).
int run_experiment(const RunConfig& cfg, const ExperimentOptions& opts);

// Re-aggregates every *.log under dir (lexicographic order) and rewrites the
// per-point reports and summary.csv.
int reaggregate_directory(const std::string& dir);

std::string summary_csv_header();
std::string summary_csv_row(const std::string& label, uint64_t seed, const KpiReport& r);

}  // namespace hetsim
