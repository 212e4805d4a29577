// Run configuration: all simulator knobs, JSON (de)serialization, defaulting
// and validation. The effective config echoed to the output directory parses
// back to an identical config.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hetsim {

enum class SchedulerMode { auto_mode, classical_pf, context_aware };
enum class LearnerKind { classical, mab, satisfaction };

struct ScenarioConfig {
  int site_count = 1;
  int sectors_per_site = 3;
  int picos_per_sector = 1;
  int ues_per_sector = 30;
  double hotspot_radius_m = 60.0;
  double isd_m = 500.0;
  std::vector<double> velocity_set_kmh{3.0, 30.0, 60.0, 120.0};
  double fixed_velocity_kmh = 0.0;  // 0 disables; >0 pins every UE to this speed
  double region_margin_m = 50.0;
  double min_macro_pico_m = 75.0;
  double min_pico_pico_m = 40.0;
};

struct RadioConfig {
  double bandwidth_hz = 10e6;
  int rb_count = 50;
  double rb_bandwidth_hz = 180e3;
  double macro_tx_power_dbm = 46.0;
  double pico_tx_power_dbm = 30.0;
  double macro_max_tx_power_dbm = 46.0;
  double pico_max_tx_power_dbm = 30.0;
  double noise_psd_dbm_hz = -174.0;
  double macro_pl_const_db = 128.1;
  double macro_pl_slope_db = 37.6;
  double pico_pl_const_db = 140.7;
  double pico_pl_slope_db = 36.7;
  double min_pathloss_distance_m = 10.0;
  double antenna_theta3db_deg = 70.0;
  double antenna_amax_db = 25.0;
  double macro_antenna_gain_dbi = 0.0;
  double pico_antenna_gain_dbi = 0.0;
  double shadowing_sigma_macro_db = 8.0;
  double shadowing_sigma_pico_db = 10.0;
  std::string fading = "rayleigh";  // rayleigh | none
  double carrier_hz = 2e9;
};

struct HandoverConfig {
  int ttt_ms = 480;
  double hysteresis_db = 0.0;
  double l3_coefficient = 0.5;
  double qout_db = -8.0;
  int pp_window_ms = 1000;
  int ho_execution_delay_ms = 50;
};

struct SchedulerConfig {
  SchedulerMode mode = SchedulerMode::auto_mode;
  double pf_floor_bps = 1000.0;
  double epsilon_tie = 1e-9;
  double history_window_ms = 100.0;
};

struct LearningConfig {
  LearnerKind learner = LearnerKind::classical;
  std::vector<double> macro_reb_set_db{0.0, 3.0, 6.0};
  std::vector<double> pico_reb_set_db{0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 18.0};
  double cell_rate_min_bps = 5e6;
  double ue_rate_min_bps = 250e3;
  int learning_epoch_ttis = 1;
};

struct EngineConfig {
  long duration_ms = 10000;
  long warmup_ms = 1000;
};

struct RunConfig {
  ScenarioConfig scenario;
  RadioConfig radio;
  HandoverConfig handover;
  SchedulerConfig scheduler;
  LearningConfig learning;
  EngineConfig engine;
  std::vector<uint64_t> seeds{1};
  std::string output_dir = "out";
  // Sweep axes: name -> list of values. std::map keeps axis order stable.
  std::map<std::string, nlohmann::json> sweep;

  // Resolves scheduler_mode=auto: classical learner pairs with the classical
  // PF baseline (average-rate reset at handover), learners pair with the
  // context-aware scheduler (history transfer).
  SchedulerMode resolved_scheduler_mode() const {
    if (scheduler.mode != SchedulerMode::auto_mode) return scheduler.mode;
    return learning.learner == LearnerKind::classical ? SchedulerMode::classical_pf
                                                      : SchedulerMode::context_aware;
  }
};

const char* to_string(SchedulerMode m);
const char* to_string(LearnerKind k);
std::optional<SchedulerMode> scheduler_mode_from_string(const std::string& s);
std::optional<LearnerKind> learner_from_string(const std::string& s);

nlohmann::ordered_json to_json(const RunConfig& cfg);

// Thrown on unknown keys, type mismatches or constraint violations; the
// message carries the offending key path (or parse position).
class ConfigErrorException : public std::runtime_error {
 public:
  explicit ConfigErrorException(const std::string& what) : std::runtime_error(what) {}
};

RunConfig config_from_json(const nlohmann::json& input, std::vector<std::string>* warnings);

// Loads and parses a config file. Throws ConfigError with the parse position
// or key path on failure.
RunConfig parse_config(const std::string& path, std::vector<std::string>* warnings);

void validate(const RunConfig& cfg, std::vector<std::string>* warnings);

}  // namespace hetsim
