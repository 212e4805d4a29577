// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Trend criteria run the shipped preset configs through the CLI
// binary and read back the per-run reports.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetsim/engine.hpp"
#include "hetsim/experiment.hpp"

using namespace hetsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail
            << std::endl;
  if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_rb_exclusivity() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.scenario.picos_per_sector = 0;  // 3 macro sector cells
  cfg.scenario.ues_per_sector = 10;   // 30 UEs
  cfg.learning.learner = LearnerKind::mab;
  cfg.learning.learning_epoch_ttis = 100;
  cfg.engine.duration_ms = 10000;

  World world;
  world.init(cfg, 1);
  long violations = 0;
  for (int t = 0; t < 10000; ++t) {
    world.step();
    std::vector<long> members(world.cells().size(), 0);
    for (const auto& rec : world.ues()) members[static_cast<size_t>(rec.st.serving_cell)]++;
    for (size_t c = 0; c < world.cells().size(); ++c) {
      const auto& alloc = world.allocations()[c];
      for (size_t r = 0; r < alloc.rb_to_ue.size(); ++r) {
        const bool assigned = alloc.rb_to_ue[r] >= 0;
        if (members[c] > 0 && !assigned) ++violations;
        if (members[c] == 0 && assigned) ++violations;
      }
    }
  }
  const double secs = elapsed_s(start);
  report(1, violations == 0 && secs < 120.0,
         "RB exclusivity over 10,000 TTIs x 3 cells x 30 UEs: " + std::to_string(violations) +
             " violations, " + fmt(secs) + " s");
}

// ---------------------------------------------------------------- criterion 2
void criterion_ucb_bandit() {
  const auto start = std::chrono::steady_clock::now();
  RngStream init_rng(2024, "mab-acceptance");
  RngStream arm_rng(77, "bernoulli");
  MabState mab(3, init_rng);
  const double p[3] = {0.9, 0.5, 0.1};

  long pulls[3] = {0, 0, 0};
  double regret_5k = 0.0, regret_10k = 0.0;
  double regret = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int a = mab.select();
    const double reward = arm_rng.uniform() < p[a] ? 1.0 : 0.0;
    mab.update(a, reward);
    pulls[a]++;
    regret += 0.9 - p[a];  // pseudo-regret
    if (t == 4999) regret_5k = regret;
  }
  regret_10k = regret;

  const double best_share = static_cast<double>(pulls[0]) / 10000.0;
  const bool sublinear = (regret_10k - regret_5k) < 0.5 * regret_5k;
  const double secs = elapsed_s(start);
  report(2, best_share >= 0.85 && sublinear && secs < 5.0,
         "UCB on Bernoulli(0.9/0.5/0.1): best-arm share " + fmt(best_share) +
             ", regret 5k->10k " + fmt(regret_5k) + "->" + fmt(regret_10k) + ", " +
             fmt(secs) + " s");
}

// ---------------------------------------------------------------- criterion 3
void criterion_satisfaction_simplex() {
  const auto start = std::chrono::steady_clock::now();
  bool simplex_ok = true;
  {
    SatisfactionState s(7);
    RngStream rng(31, "sat-acceptance");
    s.step(false, 0.0, 0, rng);
    s.set_bounds(1.0);
    for (long t = 1; t <= 1000000; ++t) {
      s.step(rng.uniform() < 0.5, rng.uniform(0.0, 2.0), t % 1009, rng);
      double sum = 0.0;
      for (double pi : s.pi()) {
        if (pi < 0.0 || pi > 1.0) simplex_ok = false;
        sum += pi;
      }
      if (std::abs(sum - 1.0) > 1e-9) simplex_ok = false;
    }
  }

  // Absorption: permanently dissatisfied, constant reinforcement b = 0.5
  // (reward = u_min at fixed t_n, so lambda*b stays at 0.5).
  double max_pi = 0.0;
  long absorbed_at = -1;
  {
    SatisfactionState s(7);
    RngStream rng(37, "sat-absorb");
    s.step(false, 0.0, 0, rng);
    s.set_bounds(2.0);  // u_min = 1 -> b(reward=1) = 0.5
    for (long t = 1; t <= 100000; ++t) {
      s.step(false, 1.0, 0, rng);
      max_pi = *std::max_element(s.pi().begin(), s.pi().end());
      if (max_pi >= 0.99) {
        absorbed_at = t;
        break;
      }
    }
  }
  const double secs = elapsed_s(start);
  report(3, simplex_ok && max_pi >= 0.99 && secs < 10.0,
         "satisfaction simplex over 1e6 updates " + std::string(simplex_ok ? "held" : "BROKE") +
             "; absorption max pi " + fmt(max_pi) + " at iteration " +
             std::to_string(absorbed_at) + ", " + fmt(secs) + " s");
}

// ---------------------------------------------------------------- criterion 4
void criterion_scheduler_equivalence() {
  RngStream rng(41, "sched-acceptance");
  long mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + rng.uniform_int(0, 9);
    const int rb_count = 1 + rng.uniform_int(0, 24);
    const double speed = rng.uniform(3.0, 120.0);
    std::vector<Candidate> c;
    std::vector<std::vector<double>> rates(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      c.push_back({i, 0.0, rng.uniform(0.0, 2e6), speed});
      for (int r = 0; r < rb_count; ++r)
        rates[static_cast<size_t>(i)].push_back(rng.uniform(1e4, 3e6));
    }
    const TtiAllocation cls =
        schedule_tti(c, rates, rb_count, SchedulerMode::classical_pf, 0.0, 1000.0);
    const TtiAllocation ctx =
        schedule_tti(c, rates, rb_count, SchedulerMode::context_aware, 0.0, 1000.0);
    if (cls.rb_to_ue != ctx.rb_to_ue) ++mismatches;
  }
  report(4, mismatches == 0,
         "context-aware == classical PF on 1000 equal-speed instances, " +
             std::to_string(mismatches) + " mismatches");
}

// ---------------------------------------------------------------- criterion 5
void criterion_history_transfer() {
  RngStream rng(43, "transfer-acceptance");
  long failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double src = rng.uniform(0.0, 1e8);
    const double tgt = rng.uniform(0.0, 1e8);
    const double window = rng.uniform(1.0, 1000.0);
    const double ts = rng.uniform(0.5, 10.0);
    const double got = transfer_history(src, tgt, window, ts);
    const long double expect =
        (static_cast<long double>(window) * src + static_cast<long double>(tgt) * ts) /
        (static_cast<long double>(window) + ts);
    const long double rel =
        std::abs(static_cast<long double>(got) - expect) / std::max<long double>(expect, 1e-300);
    if (rel > 1e-12) ++failures;
  }
  report(5, failures == 0,
         "history transfer matches the closed form on 1000 instances, " +
             std::to_string(failures) + " out of tolerance");
}

// ---------------------------------------------------------------- criterion 6
namespace golden {

// Independent oracle for the macro->pico crossing: closed-form RSRP along the
// trajectory, the 40 ms / 200 ms / IIR measurement chain, and the TTT counter,
// computed without touching the engine.
struct Oracle {
  double macro_rb_dbm, pico_rb_dbm;
  double pico_x;
  double x0, v_mps;
  const RadioConfig* rc;

  double macro_rsrp(double x) const {
    return macro_rb_dbm - (rc->macro_pl_const_db +
                           rc->macro_pl_slope_db * std::log10(std::max(x, 10.0) / 1000.0));
  }
  double pico_rsrp(double x) const {
    const double d = std::max(std::abs(pico_x - x), rc->min_pathloss_distance_m);
    return pico_rb_dbm - (rc->pico_pl_const_db + rc->pico_pl_slope_db * std::log10(d / 1000.0));
  }

  long trigger_time(int ttt_ms, double l3_a) const {
    double l3_m = 0.0, l3_p = 0.0;
    bool valid = false;
    int sample_count = 0;
    double buf_m[5], buf_p[5];
    int elapsed = 0;
    for (long t = 0; t < 200000; ++t) {
      const double x = x0 + v_mps * (static_cast<double>(t) / 1000.0);
      if (t % 40 == 0) {
        buf_m[sample_count % 5] = macro_rsrp(x);
        buf_p[sample_count % 5] = pico_rsrp(x);
        ++sample_count;
        if (sample_count % 5 == 0) {
          double m = 0.0, p = 0.0;
          for (int i = 0; i < 5; ++i) {
            m += buf_m[i];
            p += buf_p[i];
          }
          m /= 5.0;
          p /= 5.0;
          if (!valid) {
            l3_m = m;
            l3_p = p;
            valid = true;
          } else {
            l3_m = (1.0 - l3_a) * l3_m + l3_a * m;
            l3_p = (1.0 - l3_a) * l3_p + l3_a * p;
          }
        }
      }
      if (!valid) continue;
      const bool cond = l3_m < l3_p;  // zero bias, zero hysteresis, strict
      elapsed = cond ? elapsed + 1 : 0;
      if (elapsed >= ttt_ms) return t;
    }
    return -1;
  }
};

Topology topology(const RadioConfig& rc) {
  Topology topo;
  topo.hotspot_radius_m = 60.0;
  topo.inter_site_distance_m = 500.0;
  topo.sectors_per_site = 1;
  topo.sector_radius_m = 500.0 / std::sqrt(3.0);
  topo.region = Region{-400, -400, 400, 400};
  topo.sites.push_back(MacroSite{{0, 0}, {0.0}});
  topo.picos.push_back(PicoSite{{250.0, 0.0}, 0, 0});
  Cell macro;
  macro.id = 0;
  macro.tier = Tier::macro_cell;
  macro.position = {0, 0};
  macro.tx_power_dbm = rc.macro_tx_power_dbm;
  Cell pico;
  pico.id = 1;
  pico.tier = Tier::pico_cell;
  pico.position = {250.0, 0.0};
  pico.tx_power_dbm = rc.pico_tx_power_dbm;
  topo.cells = {macro, pico};
  return topo;
}

}  // namespace golden

void criterion_golden_trace() {
  bool all_ok = true;
  std::string detail;
  for (int ttt : {40, 480}) {
    RunConfig cfg;
    cfg.scenario.ues_per_sector = 1;
    cfg.scenario.sectors_per_site = 1;
    cfg.radio.fading = "none";
    cfg.radio.shadowing_sigma_macro_db = 0.0;
    cfg.radio.shadowing_sigma_pico_db = 0.0;
    cfg.handover.ttt_ms = ttt;
    cfg.handover.hysteresis_db = 0.0;
    cfg.learning.learner = LearnerKind::classical;
    cfg.engine.duration_ms = 40000;
    cfg.engine.warmup_ms = 0;

    golden::Oracle oracle;
    oracle.macro_rb_dbm = cfg.radio.macro_tx_power_dbm - 10.0 * std::log10(50.0) +
                          cfg.radio.macro_antenna_gain_dbi;
    oracle.pico_rb_dbm = cfg.radio.pico_tx_power_dbm - 10.0 * std::log10(50.0) +
                         cfg.radio.pico_antenna_gain_dbi;
    oracle.pico_x = 250.0;
    oracle.x0 = 150.0;
    oracle.v_mps = 30.0 / 3.6;
    oracle.rc = &cfg.radio;
    const long expected = oracle.trigger_time(ttt, cfg.handover.l3_coefficient);

    UEState ue;
    ue.id = 0;
    ue.position = {oracle.x0, 0.0};
    ue.speed_kmh = 30.0;
    ue.direction_rad = 0.0;

    World world;
    world.init_custom(cfg, 7, golden::topology(cfg.radio), {ue});
    long got = -1;
    for (long t = 0; t < cfg.engine.duration_ms && got < 0; ++t) {
      world.step();
      for (const auto& e : world.log().events)
        if (e.kind == HoEventKind::trigger) {
          got = e.time_ms;
          break;
        }
    }
    const bool ok = expected > 0 && got == expected;
    all_ok = all_ok && ok;
    detail += "TTT=" + std::to_string(ttt) + ": expected " + std::to_string(expected) +
              " got " + std::to_string(got) + (ok ? " == " : " MISMATCH ") + "; ";
  }
  report(6, all_ok, "golden handover trace, " + detail);
}

// ------------------------------------------------------- trend criteria 7-10
struct PresetRun {
  fs::path dir;
  bool ok = false;
};

PresetRun run_preset(const std::string& preset, const std::string& out_name) {
  PresetRun r;
  r.dir = fs::current_path() / out_name;
  fs::remove_all(r.dir);
  const std::string cfg = std::string(HETSIM_SOURCE_DIR) + "/configs/" + preset;
  const std::string cmd = std::string(HETSIM_BIN) + " simulate " + cfg + " --out " +
                          r.dir.string() + " --workers 2 > /dev/null";
  r.ok = std::system(cmd.c_str()) == 0;
  return r;
}

std::map<std::string, KpiReport> load_reports(const fs::path& dir) {
  std::map<std::string, KpiReport> reports;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    if (entry.path().filename() == "effective_config.json") continue;
    std::ifstream in(entry.path());
    reports[entry.path().stem().string()] =
        KpiReport::from_json(nlohmann::json::parse(in));
  }
  return reports;
}

double pooled_median(const std::map<std::string, KpiReport>& reports,
                     const std::string& label_substr) {
  std::vector<double> pooled;
  for (const auto& [label, rep] : reports)
    if (label.find(label_substr) != std::string::npos)
      pooled.insert(pooled.end(), rep.ue_mean_rate_bps.begin(), rep.ue_mean_rate_bps.end());
  if (pooled.empty()) return 0.0;
  std::sort(pooled.begin(), pooled.end());
  return percentile(pooled, 50.0);
}

double mean_scalar(const std::map<std::string, KpiReport>& reports,
                   const std::string& label_substr, double KpiReport::*field) {
  double sum = 0.0;
  long n = 0;
  for (const auto& [label, rep] : reports)
    if (label.find(label_substr) != std::string::npos) {
      sum += rep.*field;
      ++n;
    }
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

// Pools handover counts across seeds before forming the ratio.
double pooled_pp(const std::map<std::string, KpiReport>& reports,
                 const std::string& label_substr) {
  long pps = 0, successes = 0;
  for (const auto& [label, rep] : reports)
    if (label.find(label_substr) != std::string::npos) {
      pps += rep.handover_counts.pingpongs;
      successes += rep.handover_counts.successes;
    }
  return successes > 0 ? static_cast<double>(pps) / static_cast<double>(successes) : 0.0;
}

void criterion_throughput_trend(const PresetRun& fig2) {
  if (!fig2.ok) {
    report(7, false, "fig2 preset failed to run");
    return;
  }
  const auto reports = load_reports(fig2.dir);
  const double classical = pooled_median(reports, "learner=classical");
  const double mab = pooled_median(reports, "learner=mab");
  const double sat = pooled_median(reports, "learner=satisfaction");
  const bool pass = mab >= 1.25 * classical && sat >= 1.25 * classical && classical > 0;
  report(7, pass,
         "median UE throughput (fig2, pooled over seeds): classical " + fmt(classical) +
             " bps, mab " + fmt(mab) + " (" + fmt(mab / classical) + "x), satisfaction " +
             fmt(sat) + " (" + fmt(sat / classical) + "x); need >= 1.25x");
}

void criterion_hof_trend(const PresetRun& fig5) {
  if (!fig5.ok) {
    report(8, false, "fig5 preset failed to run");
    return;
  }
  const auto reports = load_reports(fig5.dir);
  auto hof = [&](const std::string& v, const std::string& l) {
    return mean_scalar(reports, "fixed_velocity_kmh=" + v + "__learner=" + l,
                       &KpiReport::hof_probability);
  };
  const double c60 = hof("60", "classical"), m60 = hof("60", "mab"), s60 = hof("60", "satisfaction");
  const double c120 = hof("120", "classical"), m120 = hof("120", "mab"),
               s120 = hof("120", "satisfaction");
  const bool at60 = m60 <= c60 + 1e-12 && s60 <= c60 + 1e-12;
  const bool at120 = m120 <= 0.75 * c120 && s120 <= 0.75 * c120;
  report(8, at60 && at120,
         "mean HOF probability: 60 km/h classical " + fmt(c60) + " mab " + fmt(m60) +
             " sat " + fmt(s60) + "; 120 km/h classical " + fmt(c120) + " mab " + fmt(m120) +
             " sat " + fmt(s120) + " (need <= 0.75x classical at 120)");
}

void criterion_pp_trend(const PresetRun& fig6) {
  if (!fig6.ok) {
    report(9, false, "fig6 preset failed to run");
    return;
  }
  const auto reports = load_reports(fig6.dir);
  bool ordered = true, small480 = true;
  std::string detail;
  for (const std::string& v : {"60", "120"}) {
    for (const std::string& l : {"classical", "mab", "satisfaction"}) {
      const std::string base = "fixed_velocity_kmh=" + v + "__learner=" + l + "__ttt_ms=";
      const double pp40 = pooled_pp(reports, base + "40_");
      const double pp480 = pooled_pp(reports, base + "480_");
      ordered = ordered && pp480 < pp40;
      small480 = small480 && pp480 < 0.05;
      detail += l.substr(0, 3) + "@" + v + " " + fmt(pp480) + "<" + fmt(pp40) + "; ";
    }
  }
  report(9, ordered && small480, "PP probability TTT=480 vs TTT=40 (pooled): " + detail);
}

void criterion_rerun_determinism(const PresetRun& first) {
  if (!first.ok) {
    report(10, false, "fig2 preset failed to run");
    return;
  }
  const PresetRun second = run_preset("fig2_cdf.json", "acceptance_fig2_rerun");
  if (!second.ok) {
    report(10, false, "fig2 rerun failed");
    return;
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const bool same = slurp(first.dir / "summary.csv") == slurp(second.dir / "summary.csv");
  report(10, same, std::string("rerun summary.csv ") +
                       (same ? "byte-identical" : "DIFFERS"));
}

}  // namespace

int main() {
  std::cout << "hetsim acceptance suite\n";
  criterion_rb_exclusivity();
  criterion_ucb_bandit();
  criterion_satisfaction_simplex();
  criterion_scheduler_equivalence();
  criterion_history_transfer();
  criterion_golden_trace();

  const auto t7 = std::chrono::steady_clock::now();
  const PresetRun fig2 = run_preset("fig2_cdf.json", "acceptance_fig2");
  criterion_throughput_trend(fig2);
  std::cout << "  (fig2 preset wall time " << fmt(elapsed_s(t7)) << " s)\n";

  const auto t8 = std::chrono::steady_clock::now();
  const PresetRun fig5 = run_preset("fig5_hof.json", "acceptance_fig5");
  criterion_hof_trend(fig5);
  std::cout << "  (fig5 preset wall time " << fmt(elapsed_s(t8)) << " s)\n";

  const PresetRun fig6 = run_preset("fig6_pp.json", "acceptance_fig6");
  criterion_pp_trend(fig6);

  criterion_rerun_determinism(fig2);

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ")
            << (g_failures == 0 ? "" : std::to_string(g_failures)) << std::endl;
  return g_failures == 0 ? 0 : 1;
}
