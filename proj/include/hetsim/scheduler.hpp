// Per-TTI resource-block allocation: classical proportional fair and the
// context-aware variant (velocity-sorted tie break, handover history
// transfer).
#pragma once

#include <span>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/types.hpp"

namespace hetsim {

struct Candidate {
  UeId ue = -1;
  double inst_rb_rate_bps = 0.0;  // achievable rate on the RB being decided
  double avg_rate_bps = 0.0;      // windowed average rate
  double speed_kmh = 0.0;
};

// One cell's allocation for one TTI. rb_to_ue[r] == -1 marks an unallocated
// RB (empty cell); otherwise exactly one UE owns each RB.
struct TtiAllocation {
  std::vector<UeId> rb_to_ue;
  std::vector<double> rb_rate_bps;

  void resize(int rb_count) {
    rb_to_ue.assign(static_cast<size_t>(rb_count), -1);
    rb_rate_bps.assign(static_cast<size_t>(rb_count), 0.0);
  }
};

// Picks the UE for one RB. Both modes rank by the PF metric
// inst_rate / max(avg_rate, floor). classical_pf takes the strict argmax
// (lowest UE id on exact ties). context_aware forms the tie set of candidates
// within relative epsilon_tie of the best metric and serves its
// slowest member (UE id as the residual tie break). Returns the index into
// `candidates`, or -1 when empty.
int schedule_rb(std::span<const Candidate> candidates, SchedulerMode mode,
                double epsilon_tie, double pf_floor_bps);

// Allocates every RB of one cell. per_rb_rate_bps is indexed
// [candidate][rb]. Candidates' avg rates are frozen for the whole TTI.
TtiAllocation schedule_tti(std::span<const Candidate> candidates,
                           const std::vector<std::vector<double>>& per_rb_rate_bps,
                           int rb_count, SchedulerMode mode, double epsilon_tie,
                           double pf_floor_bps);

// Moving-window average update applied every TTI:
// avg <- (T*avg + inst*Ts) / (T + Ts).
double update_avg_rate(double avg_rate_bps, double inst_rate_bps, double window_ms,
                       double ts_ms);

// Average-rate seed for a UE entering a new cell: the source cell's history
// blended with the first rate observed at the target. The classical baseline
// resets the average to zero instead.
double transfer_history(double source_avg_bps, double first_target_inst_bps,
                        double window_ms, double ts_ms);

// Total scheduled rate of the cell this TTI (the learning reward).
double cell_load_bps(const TtiAllocation& alloc);

// Single-user rate bound of a cell: the best candidate on every RB. Feeds
// the u_max estimate of the learning layer. Monotone in the candidate set.
double single_user_bound_bps(const std::vector<std::vector<double>>& per_rb_rate_bps,
                             int rb_count);

}  // namespace hetsim
