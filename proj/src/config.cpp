#include "hetsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hetsim {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(SchedulerMode m) {
  switch (m) {
    case SchedulerMode::auto_mode: return "auto";
    case SchedulerMode::classical_pf: return "classical_pf";
    case SchedulerMode::context_aware: return "context_aware";
  }
  return "auto";
}

const char* to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::classical: return "classical";
    case LearnerKind::mab: return "mab";
    case LearnerKind::satisfaction: return "satisfaction";
  }
  return "classical";
}

std::optional<SchedulerMode> scheduler_mode_from_string(const std::string& s) {
  if (s == "auto") return SchedulerMode::auto_mode;
  if (s == "classical_pf") return SchedulerMode::classical_pf;
  if (s == "context_aware") return SchedulerMode::context_aware;
  return std::nullopt;
}

std::optional<LearnerKind> learner_from_string(const std::string& s) {
  if (s == "classical" || s == "none") return LearnerKind::classical;
  if (s == "mab") return LearnerKind::mab;
  if (s == "satisfaction") return LearnerKind::satisfaction;
  return std::nullopt;
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["scenario"] = {{"site_count", c.scenario.site_count},
                   {"sectors_per_site", c.scenario.sectors_per_site},
                   {"picos_per_sector", c.scenario.picos_per_sector},
                   {"ues_per_sector", c.scenario.ues_per_sector},
                   {"hotspot_radius_m", c.scenario.hotspot_radius_m},
                   {"isd_m", c.scenario.isd_m},
                   {"velocity_set_kmh", c.scenario.velocity_set_kmh},
                   {"fixed_velocity_kmh", c.scenario.fixed_velocity_kmh},
                   {"region_margin_m", c.scenario.region_margin_m},
                   {"min_macro_pico_m", c.scenario.min_macro_pico_m},
                   {"min_pico_pico_m", c.scenario.min_pico_pico_m}};
  j["radio"] = {{"bandwidth_hz", c.radio.bandwidth_hz},
                {"rb_count", c.radio.rb_count},
                {"rb_bandwidth_hz", c.radio.rb_bandwidth_hz},
                {"macro_tx_power_dbm", c.radio.macro_tx_power_dbm},
                {"pico_tx_power_dbm", c.radio.pico_tx_power_dbm},
                {"macro_max_tx_power_dbm", c.radio.macro_max_tx_power_dbm},
                {"pico_max_tx_power_dbm", c.radio.pico_max_tx_power_dbm},
                {"noise_psd_dbm_hz", c.radio.noise_psd_dbm_hz},
                {"macro_pl_const_db", c.radio.macro_pl_const_db},
                {"macro_pl_slope_db", c.radio.macro_pl_slope_db},
                {"pico_pl_const_db", c.radio.pico_pl_const_db},
                {"pico_pl_slope_db", c.radio.pico_pl_slope_db},
                {"min_pathloss_distance_m", c.radio.min_pathloss_distance_m},
                {"antenna_theta3db_deg", c.radio.antenna_theta3db_deg},
                {"antenna_amax_db", c.radio.antenna_amax_db},
                {"macro_antenna_gain_dbi", c.radio.macro_antenna_gain_dbi},
                {"pico_antenna_gain_dbi", c.radio.pico_antenna_gain_dbi},
                {"shadowing_sigma_macro_db", c.radio.shadowing_sigma_macro_db},
                {"shadowing_sigma_pico_db", c.radio.shadowing_sigma_pico_db},
                {"fading", c.radio.fading},
                {"carrier_hz", c.radio.carrier_hz}};
  j["handover"] = {{"ttt_ms", c.handover.ttt_ms},
                   {"hysteresis_db", c.handover.hysteresis_db},
                   {"l3_coefficient", c.handover.l3_coefficient},
                   {"qout_db", c.handover.qout_db},
                   {"pp_window_ms", c.handover.pp_window_ms},
                   {"ho_execution_delay_ms", c.handover.ho_execution_delay_ms}};
  j["scheduler"] = {{"scheduler_mode", to_string(c.scheduler.mode)},
                    {"pf_floor_bps", c.scheduler.pf_floor_bps},
                    {"epsilon_tie", c.scheduler.epsilon_tie},
                    {"history_window_ms", c.scheduler.history_window_ms}};
  j["learning"] = {{"learner", to_string(c.learning.learner)},
                   {"macro_reb_set_db", c.learning.macro_reb_set_db},
                   {"pico_reb_set_db", c.learning.pico_reb_set_db},
                   {"cell_rate_min_bps", c.learning.cell_rate_min_bps},
                   {"ue_rate_min_bps", c.learning.ue_rate_min_bps},
                   {"learning_epoch_ttis", c.learning.learning_epoch_ttis}};
  j["engine"] = {{"duration_ms", c.engine.duration_ms}, {"warmup_ms", c.engine.warmup_ms}};
  j["seeds"] = c.seeds;
  j["output_dir"] = c.output_dir;
  ordered_json sweep = ordered_json::object();
  for (const auto& [axis, values] : c.sweep) sweep[axis] = values;
  j["sweep"] = sweep;
  return j;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigErrorException{path + ": " + why};
}

bool same_kind(const json& value, const json& def) {
  if (def.is_number() && value.is_number()) return true;
  if (def.is_string() && value.is_string()) return true;
  if (def.is_boolean() && value.is_boolean()) return true;
  if (def.is_array() && value.is_array()) return true;
  if (def.is_object() && value.is_object()) return true;
  return false;
}

// Walks `input` against the default-config schema, rejecting unknown keys and
// kind mismatches. "sweep" values are free-form arrays checked later.
void merge_checked(json& effective, const json& input, const std::string& prefix) {
  if (!input.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (auto it = input.begin(); it != input.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!effective.contains(it.key())) fail(path, "unknown key");
    json& slot = effective[it.key()];
    if (path == "sweep") {
      if (!it.value().is_object()) fail(path, "expected an object of axis -> value list");
      slot = it.value();
      continue;
    }
    if (slot.is_object()) {
      merge_checked(slot, it.value(), path);
      continue;
    }
    if (it.value().is_null()) continue;  // null keeps the default
    if (!same_kind(it.value(), slot))
      fail(path, std::string("type mismatch, expected ") + slot.type_name() + ", got " +
                     it.value().type_name());
    slot = it.value();
  }
}

template <typename T>
T get_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<T>();
}

}  // namespace

RunConfig config_from_json(const json& input, std::vector<std::string>* warnings) {
  json effective = to_json(RunConfig{});
  merge_checked(effective, input, "");

  RunConfig c;
  const json& sc = effective["scenario"];
  c.scenario.site_count = get_num<int>(sc["site_count"], "scenario.site_count");
  c.scenario.sectors_per_site = get_num<int>(sc["sectors_per_site"], "scenario.sectors_per_site");
  c.scenario.picos_per_sector = get_num<int>(sc["picos_per_sector"], "scenario.picos_per_sector");
  c.scenario.ues_per_sector = get_num<int>(sc["ues_per_sector"], "scenario.ues_per_sector");
  c.scenario.hotspot_radius_m = sc["hotspot_radius_m"].get<double>();
  c.scenario.isd_m = sc["isd_m"].get<double>();
  c.scenario.velocity_set_kmh = sc["velocity_set_kmh"].get<std::vector<double>>();
  c.scenario.fixed_velocity_kmh = sc["fixed_velocity_kmh"].get<double>();
  c.scenario.region_margin_m = sc["region_margin_m"].get<double>();
  c.scenario.min_macro_pico_m = sc["min_macro_pico_m"].get<double>();
  c.scenario.min_pico_pico_m = sc["min_pico_pico_m"].get<double>();

  const json& rc = effective["radio"];
  c.radio.bandwidth_hz = rc["bandwidth_hz"].get<double>();
  c.radio.rb_count = get_num<int>(rc["rb_count"], "radio.rb_count");
  c.radio.rb_bandwidth_hz = rc["rb_bandwidth_hz"].get<double>();
  c.radio.macro_tx_power_dbm = rc["macro_tx_power_dbm"].get<double>();
  c.radio.pico_tx_power_dbm = rc["pico_tx_power_dbm"].get<double>();
  c.radio.macro_max_tx_power_dbm = rc["macro_max_tx_power_dbm"].get<double>();
  c.radio.pico_max_tx_power_dbm = rc["pico_max_tx_power_dbm"].get<double>();
  c.radio.noise_psd_dbm_hz = rc["noise_psd_dbm_hz"].get<double>();
  c.radio.macro_pl_const_db = rc["macro_pl_const_db"].get<double>();
  c.radio.macro_pl_slope_db = rc["macro_pl_slope_db"].get<double>();
  c.radio.pico_pl_const_db = rc["pico_pl_const_db"].get<double>();
  c.radio.pico_pl_slope_db = rc["pico_pl_slope_db"].get<double>();
  c.radio.min_pathloss_distance_m = rc["min_pathloss_distance_m"].get<double>();
  c.radio.antenna_theta3db_deg = rc["antenna_theta3db_deg"].get<double>();
  c.radio.antenna_amax_db = rc["antenna_amax_db"].get<double>();
  c.radio.macro_antenna_gain_dbi = rc["macro_antenna_gain_dbi"].get<double>();
  c.radio.pico_antenna_gain_dbi = rc["pico_antenna_gain_dbi"].get<double>();
  c.radio.shadowing_sigma_macro_db = rc["shadowing_sigma_macro_db"].get<double>();
  c.radio.shadowing_sigma_pico_db = rc["shadowing_sigma_pico_db"].get<double>();
  c.radio.fading = rc["fading"].get<std::string>();
  c.radio.carrier_hz = rc["carrier_hz"].get<double>();

  const json& hc = effective["handover"];
  c.handover.ttt_ms = get_num<int>(hc["ttt_ms"], "handover.ttt_ms");
  c.handover.hysteresis_db = hc["hysteresis_db"].get<double>();
  c.handover.l3_coefficient = hc["l3_coefficient"].get<double>();
  c.handover.qout_db = hc["qout_db"].get<double>();
  c.handover.pp_window_ms = get_num<int>(hc["pp_window_ms"], "handover.pp_window_ms");
  c.handover.ho_execution_delay_ms =
      get_num<int>(hc["ho_execution_delay_ms"], "handover.ho_execution_delay_ms");

  const json& scj = effective["scheduler"];
  const std::string mode_str = scj["scheduler_mode"].get<std::string>();
  auto mode = scheduler_mode_from_string(mode_str);
  if (!mode) fail("scheduler.scheduler_mode", "unknown mode '" + mode_str + "'");
  c.scheduler.mode = *mode;
  c.scheduler.pf_floor_bps = scj["pf_floor_bps"].get<double>();
  c.scheduler.epsilon_tie = scj["epsilon_tie"].get<double>();
  c.scheduler.history_window_ms = scj["history_window_ms"].get<double>();

  const json& lc = effective["learning"];
  const std::string learner_str = lc["learner"].get<std::string>();
  auto learner = learner_from_string(learner_str);
  if (!learner) fail("learning.learner", "unknown learner '" + learner_str + "'");
  c.learning.learner = *learner;
  c.learning.macro_reb_set_db = lc["macro_reb_set_db"].get<std::vector<double>>();
  c.learning.pico_reb_set_db = lc["pico_reb_set_db"].get<std::vector<double>>();
  c.learning.cell_rate_min_bps = lc["cell_rate_min_bps"].get<double>();
  c.learning.ue_rate_min_bps = lc["ue_rate_min_bps"].get<double>();
  c.learning.learning_epoch_ttis =
      get_num<int>(lc["learning_epoch_ttis"], "learning.learning_epoch_ttis");

  const json& ec = effective["engine"];
  c.engine.duration_ms = get_num<long>(ec["duration_ms"], "engine.duration_ms");
  c.engine.warmup_ms = get_num<long>(ec["warmup_ms"], "engine.warmup_ms");

  c.seeds = effective["seeds"].get<std::vector<uint64_t>>();
  c.output_dir = effective["output_dir"].get<std::string>();
  for (auto it = effective["sweep"].begin(); it != effective["sweep"].end(); ++it) {
    if (!it.value().is_array() || it.value().empty())
      fail("sweep." + it.key(), "expected a non-empty value list");
    c.sweep[it.key()] = it.value();
  }

  validate(c, warnings);
  return c;
}

RunConfig parse_config(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path, e.what());  // nlohmann reports line/byte position
  }
  return config_from_json(j, warnings);
}

void validate(const RunConfig& c, std::vector<std::string>* warnings) {
  auto require = [](bool ok, const std::string& path, const std::string& why) {
    if (!ok) fail(path, why);
  };
  const auto& s = c.scenario;
  require(s.site_count >= 1 && s.site_count <= 7, "scenario.site_count", "must be in [1,7]");
  require(s.sectors_per_site >= 1 && s.sectors_per_site <= 3, "scenario.sectors_per_site",
          "must be in [1,3]");
  require(s.picos_per_sector >= 0, "scenario.picos_per_sector", "must be >= 0");
  require(s.ues_per_sector >= 0, "scenario.ues_per_sector", "must be >= 0");
  require(s.hotspot_radius_m > 0, "scenario.hotspot_radius_m", "must be > 0");
  require(s.isd_m > 0, "scenario.isd_m", "must be > 0");
  require(s.fixed_velocity_kmh >= 0, "scenario.fixed_velocity_kmh", "must be >= 0 (0 disables)");
  if (s.fixed_velocity_kmh == 0.0) {
    require(!s.velocity_set_kmh.empty(), "scenario.velocity_set_kmh", "must be non-empty");
    for (double v : s.velocity_set_kmh)
      require(v > 0, "scenario.velocity_set_kmh", "speeds must be > 0");
  }
  require(s.region_margin_m >= 0, "scenario.region_margin_m", "must be >= 0");

  const auto& r = c.radio;
  require(r.rb_count >= 1, "radio.rb_count", "must be >= 1");
  require(r.rb_bandwidth_hz > 0, "radio.rb_bandwidth_hz", "must be > 0");
  require(r.rb_count * r.rb_bandwidth_hz <= r.bandwidth_hz + 1e-6, "radio.rb_count",
          "rb_count * rb_bandwidth_hz exceeds bandwidth_hz");
  require(r.macro_tx_power_dbm <= r.macro_max_tx_power_dbm, "radio.macro_tx_power_dbm",
          "exceeds macro_max_tx_power_dbm");
  require(r.pico_tx_power_dbm <= r.pico_max_tx_power_dbm, "radio.pico_tx_power_dbm",
          "exceeds pico_max_tx_power_dbm");
  require(r.min_pathloss_distance_m > 0, "radio.min_pathloss_distance_m", "must be > 0");
  require(r.fading == "rayleigh" || r.fading == "none", "radio.fading",
          "must be 'rayleigh' or 'none'");
  require(r.carrier_hz > 0, "radio.carrier_hz", "must be > 0");
  require(r.shadowing_sigma_macro_db >= 0 && r.shadowing_sigma_pico_db >= 0,
          "radio.shadowing_sigma_macro_db", "sigma must be >= 0");

  const auto& h = c.handover;
  require(h.ttt_ms > 0, "handover.ttt_ms", "must be > 0");
  if (warnings && h.ttt_ms != 40 && h.ttt_ms != 480)
    warnings->push_back("handover.ttt_ms=" + std::to_string(h.ttt_ms) +
                        " is outside the evaluated set {40, 480}");
  require(h.l3_coefficient > 0 && h.l3_coefficient <= 1, "handover.l3_coefficient",
          "must be in (0,1]");
  require(h.pp_window_ms > 0, "handover.pp_window_ms", "must be > 0");
  require(h.ho_execution_delay_ms >= 0, "handover.ho_execution_delay_ms", "must be >= 0");

  require(c.scheduler.pf_floor_bps > 0, "scheduler.pf_floor_bps", "must be > 0");
  require(c.scheduler.epsilon_tie >= 0, "scheduler.epsilon_tie", "must be >= 0");
  require(c.scheduler.history_window_ms > 0, "scheduler.history_window_ms", "must be > 0");

  auto check_set = [&](const std::vector<double>& set, const std::string& path) {
    require(!set.empty(), path, "must be non-empty");
    require(std::is_sorted(set.begin(), set.end()) &&
                std::adjacent_find(set.begin(), set.end()) == set.end(),
            path, "must be strictly increasing");
    require(std::find(set.begin(), set.end(), 0.0) != set.end(), path, "must contain 0");
  };
  check_set(c.learning.macro_reb_set_db, "learning.macro_reb_set_db");
  check_set(c.learning.pico_reb_set_db, "learning.pico_reb_set_db");
  require(c.learning.cell_rate_min_bps >= 0, "learning.cell_rate_min_bps", "must be >= 0");
  require(c.learning.ue_rate_min_bps >= 0, "learning.ue_rate_min_bps", "must be >= 0");
  require(c.learning.learning_epoch_ttis >= 1, "learning.learning_epoch_ttis", "must be >= 1");

  require(c.engine.duration_ms > 0, "engine.duration_ms", "must be > 0");
  require(c.engine.warmup_ms >= 0 && c.engine.warmup_ms < c.engine.duration_ms,
          "engine.warmup_ms", "must be in [0, duration_ms)");
  require(!c.seeds.empty(), "seeds", "must be non-empty");
}

}  // namespace hetsim
