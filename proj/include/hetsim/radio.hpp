// Radio abstractions: path loss, sector antenna pattern, lognormal shadowing,
// temporally correlated Rayleigh fading, RSRP, per-RB SINR and Shannon rate.
//
// RSRP is a long-term quantity: path loss + antenna + shadowing, no fast
// fading. Fading enters only SINR (and therefore rates).
#pragma once

#include <span>
#include <vector>

#include "hetsim/config.hpp"
#include "hetsim/rng.hpp"
#include "hetsim/scenario.hpp"
#include "hetsim/types.hpp"

namespace hetsim {

// 3GPP-style log-distance path loss, distance clamped below at
// min_pathloss_distance_m.
double path_loss_db(Tier tier, double distance_m, const RadioConfig& rc);

// Horizontal sector pattern A(theta) = -min(12*(theta/theta3db)^2, Amax) plus
// the element gain; picos are omnidirectional.
double antenna_gain_db(const Cell& cell, const Vec2& ue_pos, const RadioConfig& rc);

// Per-RB transmit power: total power evenly split over rb_count.
double per_rb_tx_dbm(const Cell& cell, const RadioConfig& rc);

// Thermal noise per RB in mW.
double noise_per_rb_mw(const RadioConfig& rc);

// Long-term per-RB received power (no fading).
double rsrp_dbm(const Cell& cell, const Vec2& ue_pos, double shadowing_db,
                const RadioConfig& rc);

// gamma = S / (I + N), all inputs linear mW. rx_mw[j] is BS j's per-RB
// received power at the UE including fading; every BS other than `serving`
// interferes (co-channel deployment).
double sinr_linear(std::span<const double> rx_mw, int serving, double noise_mw);

// Shannon rate of one RB: B_rb * log2(1 + gamma).
double rb_rate_bps(double rb_bandwidth_hz, double sinr_linear);

// Per-(UE,BS) shadowing and per-(UE,BS,RB) Rayleigh fading state. Shadowing
// is drawn once per drop. Fading amplitudes evolve by a first-order
// autoregression whose coefficient is the Jakes correlation J0(2*pi*fD*Ts)
// at the UE's speed.
class ChannelState {
 public:
  void init(const Topology& topo, std::span<const UEState> ues, const RadioConfig& rc,
            RngStream& shadowing_rng, RngStream& fading_rng);

  // Advances all fading processes by one TTI.
  void step_fading(RngStream& fading_rng);

  double shadowing_db(int ue, int bs) const {
    return shadowing_db_[static_cast<size_t>(ue) * n_bs_ + static_cast<size_t>(bs)];
  }

  // Small-scale power gain, mean 1. Returns 1 when fading is disabled.
  double fading_gain(int ue, int bs, int rb) const {
    if (!rayleigh_) return 1.0;
    const size_t i = (static_cast<size_t>(ue) * n_bs_ + static_cast<size_t>(bs)) * n_rb_ +
                     static_cast<size_t>(rb);
    const double re = fading_re_[i];
    const double im = fading_im_[i];
    return re * re + im * im;
  }

  int ue_count() const { return static_cast<int>(n_ue_); }
  int bs_count() const { return static_cast<int>(n_bs_); }
  int rb_count() const { return static_cast<int>(n_rb_); }

 private:
  size_t n_ue_ = 0, n_bs_ = 0, n_rb_ = 0;
  bool rayleigh_ = true;
  std::vector<double> shadowing_db_;          // [ue * n_bs + bs]
  std::vector<double> fading_re_, fading_im_; // [(ue * n_bs + bs) * n_rb + rb]
  std::vector<double> ar_coeff_;              // per UE
  std::vector<double> ar_noise_;              // sqrt((1 - rho^2)/2) per UE
};

}  // namespace hetsim
