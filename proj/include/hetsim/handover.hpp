// Handover chain: RSRP sampling -> L1 mean -> L3 IIR filter, the biased entry
// condition with hysteresis, the per-target TTT state machine, and HOF /
// ping-pong classification.
#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hetsim/types.hpp"

namespace hetsim {

// RSRP sampling cadence and L1 window (3GPP 36.839 baseline: one sample per
// 40 ms, L1 mean over 5 samples every 200 ms).
inline constexpr int kRsrpSamplePeriodMs = 40;
inline constexpr int kL1FilterLength = 5;

// Arithmetic mean in the dB domain. Requires exactly kL1FilterLength samples.
double l1_filter(std::span<const double> samples_dbm);

// First-order IIR: out = (1-a)*prev + a*l1, a in (0,1].
double l3_filter(double prev_dbm, double l1_dbm, double a);

// Eq.-style biased entry condition (strict inequality; hysteresis is added on
// the target side).
bool entry_condition(double serving_rsrp_l3_dbm, double beta_serving_db,
                     double target_rsrp_l3_dbm, double beta_target_db,
                     double hysteresis_db);

// Measurement state for one (UE, cell) link: raw 40 ms sample buffer, L1
// output every 5 samples, L3 IIR seeded by the first L1 output.
class CellMeasurement {
 public:
  // Feeds one raw RSRP sample; updates L1/L3 every kL1FilterLength samples.
  void add_sample(double rsrp_dbm, double l3_coefficient);

  bool valid() const { return valid_; }
  double l3_dbm() const { return l3_dbm_; }

 private:
  double buf_[kL1FilterLength] = {};
  int pending_ = 0;
  double l3_dbm_ = std::numeric_limits<double>::quiet_NaN();
  bool valid_ = false;
};

// Per-UE TTT bookkeeping over all candidate target cells. The entry condition
// must hold for ttt_ms consecutive milliseconds; any false sample resets the
// timer. When several targets complete TTT in the same TTI the one with the
// highest biased RSRP wins.
class HandoverFsm {
 public:
  void resize(int cell_count) { elapsed_ms_.assign(static_cast<size_t>(cell_count), 0); }
  void reset() { std::fill(elapsed_ms_.begin(), elapsed_ms_.end(), 0); }
  int elapsed_ms(int cell) const { return elapsed_ms_[static_cast<size_t>(cell)]; }

  // condition[c] is the entry condition for target c this TTI (ignored for
  // c == serving); biased_rsrp_dbm[c] breaks simultaneous completions.
  std::optional<CellId> advance(const std::vector<bool>& condition,
                                std::span<const double> biased_rsrp_dbm,
                                CellId serving, int ttt_ms, int dt_ms);

 private:
  std::vector<int> elapsed_ms_;
};

enum class HoOutcome { success, hof };

// HOF iff the source-cell wideband SINR dipped below qout_db at any TTI of
// the observation window [trigger - TTT, trigger + execution delay].
HoOutcome classify_handover_event(std::span<const double> window_sinr_db, double qout_db);

struct HandoverRecord {
  long time_ms = 0;
  CellId source = -1;
  CellId target = -1;
};

// Ping-pong: the new handover returns to the previous handover's source cell
// within pp_window_ms.
bool detect_ping_pong(const HandoverRecord& latest,
                      const std::optional<HandoverRecord>& previous, int pp_window_ms);

// Rolling per-TTI wideband SINR history towards the current serving cell;
// cleared whenever the serving cell changes.
class SinrWindow {
 public:
  void clear(long next_time_ms) {
    values_.clear();
    first_time_ms_ = next_time_ms;
  }
  void push(double sinr_db, size_t capacity) {
    values_.push_back(sinr_db);
    while (values_.size() > capacity) {
      values_.pop_front();
      ++first_time_ms_;
    }
  }
  // Minimum over [from_ms, to_ms] clipped to the stored range.
  double min_over(long from_ms, long to_ms) const;

 private:
  std::deque<double> values_;
  long first_time_ms_ = 0;
};

}  // namespace hetsim
