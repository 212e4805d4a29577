#include "hetsim/handover.hpp"

#include <algorithm>
#include <cmath>

namespace hetsim {

double l1_filter(std::span<const double> samples_dbm) {
  double sum = 0.0;
  for (double s : samples_dbm) sum += s;
  return sum / static_cast<double>(samples_dbm.size());
}

double l3_filter(double prev_dbm, double l1_dbm, double a) {
  return (1.0 - a) * prev_dbm + a * l1_dbm;
}

bool entry_condition(double serving_rsrp_l3_dbm, double beta_serving_db,
                     double target_rsrp_l3_dbm, double beta_target_db,
                     double hysteresis_db) {
  return serving_rsrp_l3_dbm + beta_serving_db <
         target_rsrp_l3_dbm + beta_target_db + hysteresis_db;
}

void CellMeasurement::add_sample(double rsrp_dbm, double l3_coefficient) {
  buf_[pending_++] = rsrp_dbm;
  if (pending_ < kL1FilterLength) return;
  pending_ = 0;
  const double l1 = l1_filter(std::span<const double>(buf_, kL1FilterLength));
  l3_dbm_ = valid_ ? l3_filter(l3_dbm_, l1, l3_coefficient) : l1;
  valid_ = true;
}

std::optional<CellId> HandoverFsm::advance(const std::vector<bool>& condition,
                                           std::span<const double> biased_rsrp_dbm,
                                           CellId serving, int ttt_ms, int dt_ms) {
  CellId best = -1;
  for (size_t c = 0; c < elapsed_ms_.size(); ++c) {
    if (static_cast<CellId>(c) == serving) {
      elapsed_ms_[c] = 0;
      continue;
    }
    if (!condition[c]) {
      elapsed_ms_[c] = 0;
      continue;
    }
    elapsed_ms_[c] += dt_ms;
    if (elapsed_ms_[c] >= ttt_ms) {
      if (best < 0 || biased_rsrp_dbm[c] > biased_rsrp_dbm[static_cast<size_t>(best)])
        best = static_cast<CellId>(c);
    }
  }
  if (best >= 0) reset();
  return best >= 0 ? std::optional<CellId>(best) : std::nullopt;
}

HoOutcome classify_handover_event(std::span<const double> window_sinr_db, double qout_db) {
  for (double s : window_sinr_db)
    if (s < qout_db) return HoOutcome::hof;
  return HoOutcome::success;
}

bool detect_ping_pong(const HandoverRecord& latest,
                      const std::optional<HandoverRecord>& previous, int pp_window_ms) {
  if (!previous) return false;
  return latest.target == previous->source &&
         latest.time_ms - previous->time_ms < pp_window_ms;
}

double SinrWindow::min_over(long from_ms, long to_ms) const {
  double lo = std::numeric_limits<double>::infinity();
  const long first = std::max(from_ms, first_time_ms_);
  const long last = std::min(to_ms, first_time_ms_ + static_cast<long>(values_.size()) - 1);
  for (long t = first; t <= last; ++t)
    lo = std::min(lo, values_[static_cast<size_t>(t - first_time_ms_)]);
  return lo;
}

}  // namespace hetsim
