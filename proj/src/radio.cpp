#include "hetsim/radio.hpp"

#include <algorithm>
#include <cmath>

namespace hetsim {

double path_loss_db(Tier tier, double distance_m, const RadioConfig& rc) {
  const double d_km = std::max(distance_m, rc.min_pathloss_distance_m) / 1000.0;
  if (tier == Tier::macro_cell)
    return rc.macro_pl_const_db + rc.macro_pl_slope_db * std::log10(d_km);
  return rc.pico_pl_const_db + rc.pico_pl_slope_db * std::log10(d_km);
}

double antenna_gain_db(const Cell& cell, const Vec2& ue_pos, const RadioConfig& rc) {
  if (cell.tier == Tier::pico_cell) return rc.pico_antenna_gain_dbi;
  if (!cell.sectored) return rc.macro_antenna_gain_dbi;
  const double bearing = std::atan2(ue_pos.y - cell.position.y, ue_pos.x - cell.position.x);
  const double theta = wrap_angle_pi(bearing - cell.azimuth_rad);
  const double theta3db = deg_to_rad(rc.antenna_theta3db_deg);
  const double pattern = -std::min(12.0 * (theta / theta3db) * (theta / theta3db),
                                   rc.antenna_amax_db);
  return rc.macro_antenna_gain_dbi + pattern;
}

double per_rb_tx_dbm(const Cell& cell, const RadioConfig& rc) {
  return cell.tx_power_dbm - 10.0 * std::log10(static_cast<double>(rc.rb_count));
}

double noise_per_rb_mw(const RadioConfig& rc) {
  return dbm_to_mw(rc.noise_psd_dbm_hz + 10.0 * std::log10(rc.rb_bandwidth_hz));
}

double rsrp_dbm(const Cell& cell, const Vec2& ue_pos, double shadowing_db,
                const RadioConfig& rc) {
  const double dist = distance(cell.position, ue_pos);
  return per_rb_tx_dbm(cell, rc) + antenna_gain_db(cell, ue_pos, rc) -
         path_loss_db(cell.tier, dist, rc) - shadowing_db;
}

double sinr_linear(std::span<const double> rx_mw, int serving, double noise_mw) {
  double interference = 0.0;
  for (size_t j = 0; j < rx_mw.size(); ++j)
    if (static_cast<int>(j) != serving) interference += rx_mw[j];
  return rx_mw[static_cast<size_t>(serving)] / (interference + noise_mw);
}

double rb_rate_bps(double rb_bandwidth_hz, double sinr) {
  return rb_bandwidth_hz * std::log2(1.0 + sinr);
}

void ChannelState::init(const Topology& topo, std::span<const UEState> ues,
                        const RadioConfig& rc, RngStream& shadowing_rng,
                        RngStream& fading_rng) {
  n_ue_ = ues.size();
  n_bs_ = topo.cells.size();
  n_rb_ = static_cast<size_t>(rc.rb_count);
  rayleigh_ = rc.fading == "rayleigh";

  shadowing_db_.assign(n_ue_ * n_bs_, 0.0);
  for (size_t u = 0; u < n_ue_; ++u) {
    for (size_t b = 0; b < n_bs_; ++b) {
      const double sigma = topo.cells[b].tier == Tier::macro_cell
                               ? rc.shadowing_sigma_macro_db
                               : rc.shadowing_sigma_pico_db;
      shadowing_db_[u * n_bs_ + b] = sigma * shadowing_rng.normal();
    }
  }

  ar_coeff_.assign(n_ue_, 0.0);
  ar_noise_.assign(n_ue_, 0.0);
  for (size_t u = 0; u < n_ue_; ++u) {
    // Jakes temporal correlation over one TTI at the UE's Doppler.
    const double doppler_hz = kmh_to_mps(ues[u].speed_kmh) * rc.carrier_hz / kSpeedOfLightMps;
    const double x = 2.0 * std::numbers::pi * doppler_hz * (kTtiMs * 1e-3);
    const double rho = std::cyl_bessel_j(0.0, x);
    ar_coeff_[u] = rho;
    ar_noise_[u] = std::sqrt(std::max(0.0, 1.0 - rho * rho) * 0.5);
  }

  if (rayleigh_) {
    fading_re_.assign(n_ue_ * n_bs_ * n_rb_, 0.0);
    fading_im_.assign(n_ue_ * n_bs_ * n_rb_, 0.0);
    const double s = std::sqrt(0.5);  // E|h|^2 = 1
    for (size_t i = 0; i < fading_re_.size(); ++i) {
      fading_re_[i] = s * fading_rng.normal();
      fading_im_[i] = s * fading_rng.normal();
    }
  }
}

void ChannelState::step_fading(RngStream& fading_rng) {
  if (!rayleigh_) return;
  for (size_t u = 0; u < n_ue_; ++u) {
    const double rho = ar_coeff_[u];
    const double nse = ar_noise_[u];
    const size_t base = u * n_bs_ * n_rb_;
    for (size_t i = base; i < base + n_bs_ * n_rb_; ++i) {
      fading_re_[i] = rho * fading_re_[i] + nse * fading_rng.normal();
      fading_im_[i] = rho * fading_im_[i] + nse * fading_rng.normal();
    }
  }
}

}  // namespace hetsim
