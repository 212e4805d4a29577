#include "hetsim/scheduler.hpp"

#include <algorithm>
#include <cmath>

namespace hetsim {

int schedule_rb(std::span<const Candidate> candidates, SchedulerMode mode,
                double epsilon_tie, double pf_floor_bps) {
  if (candidates.empty()) return -1;

  auto metric = [&](const Candidate& c) {
    return c.inst_rb_rate_bps / std::max(c.avg_rate_bps, pf_floor_bps);
  };

  double best_metric = -1.0;
  for (const auto& c : candidates) best_metric = std::max(best_metric, metric(c));

  if (mode == SchedulerMode::classical_pf) {
    int best = -1;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (metric(candidates[i]) != best_metric) continue;
      if (best < 0 || candidates[i].ue < candidates[static_cast<size_t>(best)].ue)
        best = static_cast<int>(i);
    }
    return best;
  }

  // Context-aware: among candidates within relative epsilon of the best
  // metric, serve the slowest (UE id as the residual tie break).
  const double threshold = best_metric * (1.0 - epsilon_tie);
  int best = -1;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (metric(candidates[i]) < threshold) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const Candidate& cur = candidates[static_cast<size_t>(best)];
    const Candidate& alt = candidates[i];
    if (alt.speed_kmh < cur.speed_kmh ||
        (alt.speed_kmh == cur.speed_kmh && alt.ue < cur.ue))
      best = static_cast<int>(i);
  }
  return best;
}

TtiAllocation schedule_tti(std::span<const Candidate> candidates,
                           const std::vector<std::vector<double>>& per_rb_rate_bps,
                           int rb_count, SchedulerMode mode, double epsilon_tie,
                           double pf_floor_bps) {
  TtiAllocation alloc;
  alloc.resize(rb_count);
  if (candidates.empty()) return alloc;

  std::vector<Candidate> rb_candidates(candidates.begin(), candidates.end());
  for (int r = 0; r < rb_count; ++r) {
    for (size_t i = 0; i < rb_candidates.size(); ++i)
      rb_candidates[i].inst_rb_rate_bps = per_rb_rate_bps[i][static_cast<size_t>(r)];
    const int winner = schedule_rb(rb_candidates, mode, epsilon_tie, pf_floor_bps);
    alloc.rb_to_ue[static_cast<size_t>(r)] = rb_candidates[static_cast<size_t>(winner)].ue;
    alloc.rb_rate_bps[static_cast<size_t>(r)] =
        rb_candidates[static_cast<size_t>(winner)].inst_rb_rate_bps;
  }
  return alloc;
}

double update_avg_rate(double avg_rate_bps, double inst_rate_bps, double window_ms,
                       double ts_ms) {
  return (window_ms * avg_rate_bps + inst_rate_bps * ts_ms) / (window_ms + ts_ms);
}

double transfer_history(double source_avg_bps, double first_target_inst_bps,
                        double window_ms, double ts_ms) {
  return (window_ms * source_avg_bps + first_target_inst_bps * ts_ms) / (window_ms + ts_ms);
}

double cell_load_bps(const TtiAllocation& alloc) {
  double total = 0.0;
  for (size_t r = 0; r < alloc.rb_to_ue.size(); ++r)
    if (alloc.rb_to_ue[r] >= 0) total += alloc.rb_rate_bps[r];
  return total;
}

double single_user_bound_bps(const std::vector<std::vector<double>>& per_rb_rate_bps,
                             int rb_count) {
  double bound = 0.0;
  for (int r = 0; r < rb_count; ++r) {
    double best = 0.0;
    for (const auto& ue_rates : per_rb_rate_bps)
      best = std::max(best, ue_rates[static_cast<size_t>(r)]);
    bound += best;
  }
  return bound;
}

}  // namespace hetsim
