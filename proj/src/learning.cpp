#include "hetsim/learning.hpp"

#include <algorithm>
#include <cmath>

namespace hetsim {

MabState::MabState(int action_count, RngStream& rng)
    : sum_(static_cast<size_t>(action_count), 0.0),
      mean_(static_cast<size_t>(action_count), 0.0),
      count_(static_cast<size_t>(action_count), 0),
      init_order_(rng.permutation(action_count)) {}

double MabState::decision_value(int action) const {
  const size_t j = static_cast<size_t>(action);
  return mean_[j] + std::sqrt(2.0 * std::log(static_cast<double>(total_)) /
                              static_cast<double>(count_[j]));
}

int MabState::select() const {
  if (in_init_phase()) return init_order_[static_cast<size_t>(total_)];
  int best = 0;
  double best_d = decision_value(0);
  for (int j = 1; j < static_cast<int>(count_.size()); ++j) {
    const double d = decision_value(j);
    if (d > best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

void MabState::update(int action, double reward) {
  const size_t j = static_cast<size_t>(action);
  sum_[j] += reward;
  count_[j] += 1;
  mean_[j] = sum_[j] / static_cast<double>(count_[j]);
  total_ += 1;
}

bool check_satisfaction(double cell_rate_bps, std::span<const double> ue_avg_rates_bps,
                        double cell_rate_min_bps, double ue_rate_min_bps) {
  if (ue_avg_rates_bps.empty()) return true;  // vacuous
  if (cell_rate_bps < cell_rate_min_bps) return false;
  long above = 0;
  for (double r : ue_avg_rates_bps)
    if (r >= ue_rate_min_bps) ++above;
  // at least 90% of the UEs, integer-exact
  return 10 * above >= 9 * static_cast<long>(ue_avg_rates_bps.size());
}

SatisfactionState::SatisfactionState(int action_count)
    : pi_(static_cast<size_t>(action_count),
          1.0 / static_cast<double>(action_count)) {}

int SatisfactionState::step(bool satisfied, double reward_bps, long t_n, RngStream& rng) {
  if (previous_ < 0) {
    // First iteration: uniform distribution, random pick, no update.
    previous_ = rng.sample_discrete(pi_);
    return previous_;
  }
  if (satisfied) return previous_;

  const int j = rng.sample_discrete(pi_);
  double b = 0.0;
  if (u_max_bps_ > 0.0) {
    b = (u_max_bps_ + reward_bps - u_min_bps_) / (2.0 * u_max_bps_);
    if (b < 0.0 || b > 1.0) {
      ++clamp_events_;
      b = std::clamp(b, 0.0, 1.0);
    }
  }
  const double lambda = 1.0 / (100.0 * static_cast<double>(t_n) + 1.0);
  const double step = lambda * b;
  double sum = 0.0;
  for (size_t i = 0; i < pi_.size(); ++i) {
    const double indicator = static_cast<int>(i) == j ? 1.0 : 0.0;
    pi_[i] += step * (indicator - pi_[i]);
    pi_[i] = std::clamp(pi_[i], 0.0, 1.0);
    sum += pi_[i];
  }
  for (double& p : pi_) p /= sum;
  previous_ = j;
  return j;
}

CellAgent::CellAgent(LearnerKind kind, ActionSet actions, RngStream& rng)
    : kind_(kind), actions_(std::move(actions)) {
  if (kind_ == LearnerKind::mab) {
    mab_ = MabState(actions_.size(), rng);
  } else if (kind_ == LearnerKind::satisfaction) {
    sat_ = SatisfactionState(actions_.size());
  }
}

void CellAgent::observe_tti(double cell_load_bps, double single_user_bound_bps,
                            bool nonempty) {
  epoch_load_sum_ += cell_load_bps;
  epoch_ttis_ += 1;
  if (nonempty) u_max_estimate_ = std::max(u_max_estimate_, single_user_bound_bps);
}

void CellAgent::begin_epoch(std::optional<double> epoch_mean_load_bps,
                            std::span<const double> ue_avg_rates_bps,
                            double cell_rate_min_bps, double ue_rate_min_bps,
                            RngStream& rng) {
  switch (kind_) {
    case LearnerKind::classical:
      break;  // fixed zero bias
    case LearnerKind::mab: {
      if (epoch_mean_load_bps) {
        // Rewards normalized by the running single-user bound so the
        // exploration bonus and the exploitation term share a scale.
        const double norm = u_max_estimate_ > 0.0 ? *epoch_mean_load_bps / u_max_estimate_ : 0.0;
        mab_.update(current_action_, norm);
      }
      current_action_ = mab_.select();
      break;
    }
    case LearnerKind::satisfaction: {
      sat_.set_bounds(u_max_estimate_);
      bool satisfied = false;
      double reward = 0.0;
      if (epoch_mean_load_bps) {
        reward = *epoch_mean_load_bps;
        satisfied = check_satisfaction(reward, ue_avg_rates_bps, cell_rate_min_bps,
                                       ue_rate_min_bps);
      }
      last_satisfied_ = satisfied;
      current_action_ = sat_.step(satisfied, reward, decisions_, rng);
      break;
    }
  }
  decisions_ += 1;
  reset_epoch_accumulator();
}

}  // namespace hetsim
