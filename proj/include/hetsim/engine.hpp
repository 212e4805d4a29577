// Per-TTI simulation loop. Fixed subsystem order per TTI:
//   1 mobility, 2 channel + measurement pipeline, 3 learning epoch boundary,
//   4 handover FSM / execution / classification, 5 scheduling,
//   6 average-rate updates, 7 KPI logging.
// Learning therefore always acts on the previous epoch's load.
#pragma once

#include <optional>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/handover.hpp"
#include "hetsim/kpi.hpp"
#include "hetsim/learning.hpp"
#include "hetsim/metrics.hpp"
#include "hetsim/radio.hpp"
#include "hetsim/scenario.hpp"
#include "hetsim/scheduler.hpp"

namespace hetsim {

struct PendingHandover {
  CellId target = -1;
  long trigger_time_ms = 0;
  long completes_at_ms = 0;
};

struct UeRecord {
  UEState st;
  std::vector<CellMeasurement> meas;  // per cell
  HandoverFsm fsm;
  std::optional<PendingHandover> pending;
  std::optional<HandoverRecord> last_handover;
  SinrWindow sinr_window;
};

class World {
 public:
  // Builds topology and drops UEs from the config; init_custom accepts a
  // caller-built deployment (controlled experiments, golden traces).
  void init(const RunConfig& cfg, uint64_t seed);
  void init_custom(const RunConfig& cfg, uint64_t seed, Topology topo,
                   std::vector<UEState> ues);

  void step();  // one TTI
  long clock_ms() const { return clock_ms_; }

  const Topology& topology() const { return topo_; }
  const std::vector<Cell>& cells() const { return topo_.cells; }
  const std::vector<UeRecord>& ues() const { return ues_; }
  const std::vector<CellAgent>& agents() const { return agents_; }
  const std::vector<TtiAllocation>& allocations() const { return allocations_; }
  const KpiLog& log() const { return log_; }
  KpiLog&& take_log() { return std::move(log_); }

  // Raw biased L3 measurement used by the handover condition; NaN until the
  // first L1 emission.
  double biased_l3_dbm(int ue, CellId cell) const;

 private:
  void init_common(const RunConfig& cfg, uint64_t seed);
  void update_channel_and_measurements();
  void learning_epoch_boundary();
  void process_handovers();
  void schedule_cells();
  void update_rates_and_rewards();

  RunConfig cfg_;
  SchedulerMode sched_mode_ = SchedulerMode::classical_pf;
  Topology topo_;
  std::vector<UEState> init_common_ues_;  // staging between init and init_common
  std::vector<UeRecord> ues_;
  std::vector<CellAgent> agents_;
  std::vector<TtiAllocation> allocations_;
  ChannelState channel_;
  KpiLog log_;
  long clock_ms_ = 0;

  RngStream fading_rng_;
  RngStream learning_rng_;

  // Scratch recomputed every TTI.
  std::vector<double> rx_long_term_dbm_;   // [ue * n_cells + cell], no fading
  std::vector<double> rx_mw_;              // [(ue * n_cells + cell) * n_rb + rb]
  std::vector<double> single_user_bound_;  // per cell
  double noise_mw_ = 0.0;
};

// Runs one simulation to completion and aggregates its KPI log.
KpiReport run_simulation(const RunConfig& cfg, uint64_t seed,
                         const std::string& point_label, KpiLog* out_log = nullptr);

}  // namespace hetsim
