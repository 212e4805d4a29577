// Per-BS range-expansion learning: UCB-style multi-armed bandit and
// satisfaction-based linear reward-inaction over the discrete REB action set.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {

struct ActionSet {
  std::vector<double> reb_values_db;
  int size() const { return static_cast<int>(reb_values_db.size()); }
};

// UCB1-style bandit. The first |A| decisions play each action once in a
// pre-drawn random order; afterwards the decision function is
// mean_j + sqrt(2*ln(sum_i n_i) / n_j), lowest index on exact ties.
class MabState {
 public:
  MabState() = default;
  MabState(int action_count, RngStream& rng);

  bool in_init_phase() const { return total_ < static_cast<long>(init_order_.size()); }
  int select() const;
  void update(int action, double reward);

  long count(int action) const { return count_[static_cast<size_t>(action)]; }
  double mean(int action) const { return mean_[static_cast<size_t>(action)]; }
  double cumulative(int action) const { return sum_[static_cast<size_t>(action)]; }
  long total_count() const { return total_; }
  double decision_value(int action) const;

 private:
  std::vector<double> sum_;
  std::vector<double> mean_;
  std::vector<long> count_;
  std::vector<int> init_order_;
  long total_ = 0;
};

// Cell satisfaction: the cell-level rate target holds and at least 90% of the
// attached UEs meet the per-UE average-rate floor. An empty cell is
// vacuously satisfied.
bool check_satisfaction(double cell_rate_bps, std::span<const double> ue_avg_rates_bps,
                        double cell_rate_min_bps, double ue_rate_min_bps);

// Action probabilities updated by linear reward-inaction. A satisfied player
// replays its previous action and leaves the distribution untouched; a
// dissatisfied player samples from pi and reinforces the sampled action with
// step lambda * b, lambda = 1 / (100 * t_n + 1).
class SatisfactionState {
 public:
  SatisfactionState() = default;
  explicit SatisfactionState(int action_count);

  // u_max: single-user rate bound; u_min = u_max / 2 by convention.
  void set_bounds(double u_max_bps) {
    u_max_bps_ = u_max_bps;
    u_min_bps_ = 0.5 * u_max_bps;
  }

  // Returns the action to play. t_n is the learning-sample index feeding the
  // lambda schedule (callers control it; the engine passes its decision
  // count). The first call samples the uniform distribution without update.
  int step(bool satisfied, double reward_bps, long t_n, RngStream& rng);

  std::span<const double> pi() const { return pi_; }
  int previous_action() const { return previous_; }
  // Times b fell outside [0,1] before clamping (u_max estimate lagging).
  long clamp_events() const { return clamp_events_; }
  double u_max_bps() const { return u_max_bps_; }

 private:
  std::vector<double> pi_;
  int previous_ = -1;
  double u_max_bps_ = 0.0;
  double u_min_bps_ = 0.0;
  long clamp_events_ = 0;
};

// One learning agent per BS. Accumulates the per-TTI cell load over the
// learning epoch, tracks the running single-user rate bound used to
// normalize rewards, and maps learner decisions to the current REB.
class CellAgent {
 public:
  CellAgent() = default;
  CellAgent(LearnerKind kind, ActionSet actions, RngStream& rng);

  double current_reb_db() const {
    return actions_.reb_values_db[static_cast<size_t>(current_action_)];
  }
  int current_action() const { return current_action_; }
  LearnerKind kind() const { return kind_; }

  // Per-TTI bookkeeping after scheduling. single_user_bound_bps is
  // sum_r max_ue rate(ue, r), the cell's rate if its best UE per RB had
  // every RB; the running max of this bound estimates u_max.
  void observe_tti(double cell_load_bps, double single_user_bound_bps, bool nonempty);

  // Epoch boundary: updates the learner with the mean load of the finished
  // epoch (absent on the very first boundary) and selects the next action.
  // ue_avg_rates are the attached UEs' current average rates, used by the
  // satisfaction condition.
  void begin_epoch(std::optional<double> epoch_mean_load_bps,
                   std::span<const double> ue_avg_rates_bps,
                   double cell_rate_min_bps, double ue_rate_min_bps, RngStream& rng);

  std::optional<double> finish_epoch_mean_load() const {
    if (epoch_ttis_ == 0) return std::nullopt;
    return epoch_load_sum_ / static_cast<double>(epoch_ttis_);
  }
  void reset_epoch_accumulator() {
    epoch_load_sum_ = 0.0;
    epoch_ttis_ = 0;
  }

  double u_max_estimate_bps() const { return u_max_estimate_; }
  const MabState& mab() const { return mab_; }
  const SatisfactionState& satisfaction() const { return sat_; }
  bool last_satisfied() const { return last_satisfied_; }

 private:
  LearnerKind kind_ = LearnerKind::classical;
  ActionSet actions_{{0.0}};
  MabState mab_;
  SatisfactionState sat_;
  int current_action_ = 0;
  long decisions_ = 0;
  double u_max_estimate_ = 0.0;
  double epoch_load_sum_ = 0.0;
  long epoch_ttis_ = 0;
  bool last_satisfied_ = false;
};

}  // namespace hetsim
