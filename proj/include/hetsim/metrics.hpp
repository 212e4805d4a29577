// KPI aggregation: throughput CDF/percentiles, sum rate, handover-failure and
// ping-pong probabilities. Pure functions of a KpiLog; warm-up TTIs and
// events are excluded.
#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetsim/kpi.hpp"

namespace hetsim {

struct CdfPoint {
  double percentile = 0.0;  // 0..100
  double value_bps = 0.0;
};

struct HandoverCounts {
  long triggers = 0;
  long successes = 0;
  long hofs = 0;
  long pingpongs = 0;
};

struct KpiReport {
  int schema = 1;
  std::string point;
  uint64_t seed = 0;
  uint32_t duration_ms = 0;
  uint32_t warmup_ms = 0;
  double sum_rate_bps = 0.0;
  double throughput_p5_bps = 0.0;
  double throughput_p50_bps = 0.0;
  double throughput_p95_bps = 0.0;
  std::vector<CdfPoint> ue_throughput_cdf;  // 0..100 in 1% steps
  double hof_probability = 0.0;
  double pp_probability = 0.0;
  HandoverCounts handover_counts;
  std::vector<double> cell_mean_load_bps;
  std::vector<double> ue_mean_rate_bps;  // per-UE means, for cross-seed pooling

  nlohmann::ordered_json to_json() const;
  static KpiReport from_json(const nlohmann::json& j);
  std::string cdf_csv() const;
};

// Linear-interpolation percentile over sorted values; q in [0, 100].
double percentile(std::span<const double> sorted_values, double q);

// Mean served rate per UE over the post-warm-up window.
std::vector<double> per_ue_mean_rates(const KpiLog& log);

std::vector<CdfPoint> throughput_cdf(std::span<const double> per_ue_rates);

// hofs / (hofs + successes); 0 with no completed handovers.
double hof_probability(const KpiLog& log);

// pingpongs / successes; 0 with no successes.
double pp_probability(const KpiLog& log);

// Time average of the per-TTI total served rate.
double sum_rate(const KpiLog& log);

HandoverCounts count_events(const KpiLog& log);

KpiReport aggregate(const KpiLog& log);

}  // namespace hetsim
