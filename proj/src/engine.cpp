#include "hetsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <cmath>

namespace hetsim {

namespace {

ActionSet action_set_for(const Cell& cell, const LearningConfig& lc) {
  if (lc.learner == LearnerKind::classical) return ActionSet{{0.0}};
  return cell.tier == Tier::macro_cell ? ActionSet{lc.macro_reb_set_db}
                                       : ActionSet{lc.pico_reb_set_db};
}

}  // namespace

void World::init(const RunConfig& cfg, uint64_t seed) {
  RngStream topo_rng(seed, "topology");
  RngStream drop_rng(seed, "drop");
  Topology topo = build_topology(cfg.scenario, cfg.radio, topo_rng);
  std::vector<UEState> ues = drop_ues(topo, cfg.scenario, drop_rng);
  topo_ = std::move(topo);
  // serving assignment happens in init_common once shadowing exists
  init_common_ues_ = std::move(ues);
  init_common(cfg, seed);
}

void World::init_custom(const RunConfig& cfg, uint64_t seed, Topology topo,
                        std::vector<UEState> ues) {
  topo_ = std::move(topo);
  init_common_ues_ = std::move(ues);
  init_common(cfg, seed);
}

void World::init_common(const RunConfig& cfg, uint64_t seed) {
  cfg_ = cfg;
  sched_mode_ = cfg.resolved_scheduler_mode();
  clock_ms_ = 0;
  fading_rng_ = RngStream(seed, "fading");
  learning_rng_ = RngStream(seed, "learning");
  RngStream shadow_rng(seed, "shadowing");

  const int n_cells = static_cast<int>(topo_.cells.size());
  const int n_ues = static_cast<int>(init_common_ues_.size());

  channel_.init(topo_, init_common_ues_, cfg_.radio, shadow_rng, fading_rng_);
  noise_mw_ = noise_per_rb_mw(cfg_.radio);

  // Initial association: strongest biased RSRP with every REB still zero
  // (agents act from the first epoch boundary onward).
  assign_initial_serving(init_common_ues_, topo_.cells, [&](int u, CellId c) {
    const Cell& cell = topo_.cells[static_cast<size_t>(c)];
    return rsrp_dbm(cell, init_common_ues_[static_cast<size_t>(u)].position,
                    channel_.shadowing_db(u, c), cfg_.radio) +
           cell.reb_db;
  });

  ues_.clear();
  ues_.resize(static_cast<size_t>(n_ues));
  for (int u = 0; u < n_ues; ++u) {
    UeRecord& rec = ues_[static_cast<size_t>(u)];
    rec.st = init_common_ues_[static_cast<size_t>(u)];
    rec.meas.assign(static_cast<size_t>(n_cells), CellMeasurement{});
    rec.fsm.resize(n_cells);
    rec.sinr_window.clear(0);
  }
  init_common_ues_.clear();

  agents_.clear();
  for (const Cell& cell : topo_.cells)
    agents_.emplace_back(cfg_.learning.learner, action_set_for(cell, cfg_.learning),
                         learning_rng_);

  allocations_.assign(static_cast<size_t>(n_cells), TtiAllocation{});
  for (auto& a : allocations_) a.resize(cfg_.radio.rb_count);

  rx_long_term_dbm_.assign(static_cast<size_t>(n_ues) * static_cast<size_t>(n_cells), 0.0);
  rx_mw_.assign(static_cast<size_t>(n_ues) * static_cast<size_t>(n_cells) *
                    static_cast<size_t>(cfg_.radio.rb_count),
                0.0);
  single_user_bound_.assign(static_cast<size_t>(n_cells), 0.0);

  log_ = KpiLog{};
  log_.seed = seed;
  log_.ue_count = static_cast<uint32_t>(n_ues);
  log_.cell_count = static_cast<uint32_t>(n_cells);
  log_.duration_ms = static_cast<uint32_t>(cfg_.engine.duration_ms);
  log_.warmup_ms = static_cast<uint32_t>(cfg_.engine.warmup_ms);
  log_.ue_rate_bps.reserve(static_cast<size_t>(cfg_.engine.duration_ms) *
                           static_cast<size_t>(n_ues));
  log_.cell_load_bps.reserve(static_cast<size_t>(cfg_.engine.duration_ms) *
                             static_cast<size_t>(n_cells));
}

double World::biased_l3_dbm(int ue, CellId cell) const {
  const CellMeasurement& m = ues_[static_cast<size_t>(ue)].meas[static_cast<size_t>(cell)];
  if (!m.valid()) return std::numeric_limits<double>::quiet_NaN();
  return m.l3_dbm() + topo_.cells[static_cast<size_t>(cell)].reb_db;
}

void World::update_channel_and_measurements() {
  const int n_cells = static_cast<int>(topo_.cells.size());
  const int n_rb = cfg_.radio.rb_count;

  if (clock_ms_ > 0) channel_.step_fading(fading_rng_);

  for (size_t u = 0; u < ues_.size(); ++u) {
    UeRecord& rec = ues_[u];
    for (int c = 0; c < n_cells; ++c) {
      const Cell& cell = topo_.cells[static_cast<size_t>(c)];
      const double rsrp = rsrp_dbm(cell, rec.st.position,
                                   channel_.shadowing_db(static_cast<int>(u), c), cfg_.radio);
      rx_long_term_dbm_[u * static_cast<size_t>(n_cells) + static_cast<size_t>(c)] = rsrp;
      const double rx_mw_no_fading = dbm_to_mw(rsrp);
      const size_t base = (u * static_cast<size_t>(n_cells) + static_cast<size_t>(c)) *
                          static_cast<size_t>(n_rb);
      for (int r = 0; r < n_rb; ++r)
        rx_mw_[base + static_cast<size_t>(r)] =
            rx_mw_no_fading * channel_.fading_gain(static_cast<int>(u), c, r);
    }

    // Wideband SINR towards the serving cell, from the long-term received
    // powers: the wideband average washes out per-RB fast fading, so the
    // outage test tracks geometry and shadowing rather than fading noise.
    const size_t serving = static_cast<size_t>(rec.st.serving_cell);
    double total_lt = 0.0;
    for (size_t c = 0; c < static_cast<size_t>(n_cells); ++c)
      total_lt += dbm_to_mw(rx_long_term_dbm_[u * static_cast<size_t>(n_cells) + c]);
    const double sig_lt = dbm_to_mw(rx_long_term_dbm_[u * static_cast<size_t>(n_cells) + serving]);
    const size_t window_cap = static_cast<size_t>(cfg_.handover.ttt_ms +
                                                  cfg_.handover.ho_execution_delay_ms + 8);
    rec.sinr_window.push(linear_to_db(sig_lt / (total_lt - sig_lt + noise_mw_)), window_cap);

    // RSRP sampling every 40 ms; L1/L3 update inside the measurement.
    if (clock_ms_ % kRsrpSamplePeriodMs == 0) {
      for (int c = 0; c < n_cells; ++c)
        rec.meas[static_cast<size_t>(c)].add_sample(
            rx_long_term_dbm_[u * static_cast<size_t>(n_cells) + static_cast<size_t>(c)],
            cfg_.handover.l3_coefficient);
    }
  }
}

void World::learning_epoch_boundary() {
  if (clock_ms_ % cfg_.learning.learning_epoch_ttis != 0) return;

  // Attached UEs' average rates, needed by the satisfaction condition.
  std::vector<std::vector<double>> member_rates(topo_.cells.size());
  if (cfg_.learning.learner == LearnerKind::satisfaction)
    for (const auto& rec : ues_)
      member_rates[static_cast<size_t>(rec.st.serving_cell)].push_back(rec.st.avg_rate_bps);

  for (size_t c = 0; c < agents_.size(); ++c) {
    CellAgent& agent = agents_[c];
    agent.begin_epoch(agent.finish_epoch_mean_load(), member_rates[c],
                      cfg_.learning.cell_rate_min_bps, cfg_.learning.ue_rate_min_bps,
                      learning_rng_);
    topo_.cells[c].reb_db = agent.current_reb_db();
  }
}

void World::process_handovers() {
  const int n_cells = static_cast<int>(topo_.cells.size());
  std::vector<bool> condition(static_cast<size_t>(n_cells), false);
  std::vector<double> biased(static_cast<size_t>(n_cells), 0.0);

  for (size_t u = 0; u < ues_.size(); ++u) {
    UeRecord& rec = ues_[u];

    if (rec.pending) {
      if (clock_ms_ < rec.pending->completes_at_ms) continue;
      const PendingHandover p = *rec.pending;
      rec.pending.reset();
      const double min_sinr = rec.sinr_window.min_over(
          p.trigger_time_ms - cfg_.handover.ttt_ms, p.completes_at_ms);
      const CellId source = rec.st.serving_cell;
      if (std::getenv("HETSIM_DEBUG_HO")) {
        std::fprintf(stderr, "HO t=%ld ue=%zu v=%g src=%d(%s) tgt=%d(%s) min_sinr=%.2f %s\n",
                     clock_ms_, u, rec.st.speed_kmh, source,
                     topo_.cells[(size_t)source].tier == Tier::macro_cell ? "M" : "P",
                     p.target,
                     topo_.cells[(size_t)p.target].tier == Tier::macro_cell ? "M" : "P",
                     min_sinr, min_sinr < cfg_.handover.qout_db ? "HOF" : "OK");
      }
      if (min_sinr < cfg_.handover.qout_db) {
        log_.events.push_back({static_cast<uint32_t>(clock_ms_), static_cast<uint16_t>(u),
                               static_cast<uint16_t>(source), static_cast<uint16_t>(p.target),
                               HoEventKind::hof});
      } else {
        log_.events.push_back({static_cast<uint32_t>(clock_ms_), static_cast<uint16_t>(u),
                               static_cast<uint16_t>(source), static_cast<uint16_t>(p.target),
                               HoEventKind::success});
        const HandoverRecord record{clock_ms_, source, p.target};
        if (detect_ping_pong(record, rec.last_handover, cfg_.handover.pp_window_ms))
          log_.events.push_back({static_cast<uint32_t>(clock_ms_), static_cast<uint16_t>(u),
                                 static_cast<uint16_t>(source),
                                 static_cast<uint16_t>(p.target), HoEventKind::pingpong});
        rec.last_handover = record;
        rec.st.serving_cell = p.target;
        // Classical PF forgets the UE's history at handover; the
        // context-aware scheduler carries it so the next average-rate update
        // realizes the blended transfer.
        if (sched_mode_ == SchedulerMode::classical_pf) rec.st.avg_rate_bps = 0.0;
        rec.sinr_window.clear(clock_ms_ + 1);
      }
      rec.fsm.reset();
      continue;
    }

    const CellMeasurement& serving_meas =
        rec.meas[static_cast<size_t>(rec.st.serving_cell)];
    if (!serving_meas.valid()) continue;  // measurements not warm yet
    const Cell& serving_cell = topo_.cells[static_cast<size_t>(rec.st.serving_cell)];
    const double serving_l3 = serving_meas.l3_dbm();

    for (int c = 0; c < n_cells; ++c) {
      const Cell& target_cell = topo_.cells[static_cast<size_t>(c)];
      if (c == rec.st.serving_cell) {
        condition[static_cast<size_t>(c)] = false;
        biased[static_cast<size_t>(c)] = serving_l3 + serving_cell.reb_db;
        continue;
      }
      const CellMeasurement& target_meas = rec.meas[static_cast<size_t>(c)];
      if (!target_meas.valid()) {
        condition[static_cast<size_t>(c)] = false;
        biased[static_cast<size_t>(c)] = -1e300;
        continue;
      }
      const double target_l3 = target_meas.l3_dbm();
      biased[static_cast<size_t>(c)] = target_l3 + target_cell.reb_db;
      condition[static_cast<size_t>(c)] =
          entry_condition(serving_l3, serving_cell.reb_db, target_l3, target_cell.reb_db,
                          cfg_.handover.hysteresis_db);
    }

    const auto trigger =
        rec.fsm.advance(condition, biased, rec.st.serving_cell, cfg_.handover.ttt_ms, kTtiMs);
    if (trigger) {
      log_.events.push_back({static_cast<uint32_t>(clock_ms_), static_cast<uint16_t>(u),
                             static_cast<uint16_t>(rec.st.serving_cell),
                             static_cast<uint16_t>(*trigger), HoEventKind::trigger});
      rec.pending = PendingHandover{*trigger, clock_ms_,
                                    clock_ms_ + cfg_.handover.ho_execution_delay_ms};
    }
  }
}

void World::schedule_cells() {
  const int n_cells = static_cast<int>(topo_.cells.size());
  const int n_rb = cfg_.radio.rb_count;

  std::vector<std::vector<int>> members(static_cast<size_t>(n_cells));
  for (size_t u = 0; u < ues_.size(); ++u)
    members[static_cast<size_t>(ues_[u].st.serving_cell)].push_back(static_cast<int>(u));

  for (int c = 0; c < n_cells; ++c) {
    const auto& ue_ids = members[static_cast<size_t>(c)];
    TtiAllocation& alloc = allocations_[static_cast<size_t>(c)];
    single_user_bound_[static_cast<size_t>(c)] = 0.0;
    if (ue_ids.empty()) {
      alloc.resize(n_rb);
      continue;
    }

    std::vector<Candidate> candidates;
    candidates.reserve(ue_ids.size());
    std::vector<std::vector<double>> rates(ue_ids.size(),
                                           std::vector<double>(static_cast<size_t>(n_rb)));
    for (size_t i = 0; i < ue_ids.size(); ++i) {
      const UeRecord& rec = ues_[static_cast<size_t>(ue_ids[i])];
      candidates.push_back(
          {rec.st.id, 0.0, rec.st.avg_rate_bps, rec.st.speed_kmh});
      const size_t u = static_cast<size_t>(ue_ids[i]);
      for (int r = 0; r < n_rb; ++r) {
        double total = 0.0;
        for (size_t j = 0; j < static_cast<size_t>(n_cells); ++j)
          total += rx_mw_[(u * static_cast<size_t>(n_cells) + j) * static_cast<size_t>(n_rb) +
                          static_cast<size_t>(r)];
        const double sig = rx_mw_[(u * static_cast<size_t>(n_cells) + static_cast<size_t>(c)) *
                                      static_cast<size_t>(n_rb) +
                                  static_cast<size_t>(r)];
        rates[i][static_cast<size_t>(r)] =
            rb_rate_bps(cfg_.radio.rb_bandwidth_hz, sig / (total - sig + noise_mw_));
      }
    }

    alloc = schedule_tti(candidates, rates, n_rb, sched_mode_, cfg_.scheduler.epsilon_tie,
                         cfg_.scheduler.pf_floor_bps);

    single_user_bound_[static_cast<size_t>(c)] = single_user_bound_bps(rates, n_rb);
  }
}

void World::update_rates_and_rewards() {
  const double window = cfg_.scheduler.history_window_ms;

  std::vector<double> inst(ues_.size(), 0.0);
  for (size_t c = 0; c < allocations_.size(); ++c) {
    const TtiAllocation& alloc = allocations_[c];
    for (size_t r = 0; r < alloc.rb_to_ue.size(); ++r)
      if (alloc.rb_to_ue[r] >= 0)
        inst[static_cast<size_t>(alloc.rb_to_ue[r])] += alloc.rb_rate_bps[r];
  }

  for (size_t u = 0; u < ues_.size(); ++u) {
    UeRecord& rec = ues_[u];
    rec.st.inst_rate_bps = inst[u];
    rec.st.avg_rate_bps = update_avg_rate(rec.st.avg_rate_bps, inst[u], window, kTtiMs);
    log_.ue_rate_bps.push_back(inst[u]);
  }

  std::vector<long> member_count(allocations_.size(), 0);
  for (const auto& rec : ues_) member_count[static_cast<size_t>(rec.st.serving_cell)]++;
  for (size_t c = 0; c < allocations_.size(); ++c) {
    const double load = cell_load_bps(allocations_[c]);
    agents_[c].observe_tti(load, single_user_bound_[c], member_count[c] > 0);
    log_.cell_load_bps.push_back(load);
  }
}

void World::step() {
  if (clock_ms_ > 0)
    for (auto& rec : ues_) step_mobility(rec.st, kTtiMs, topo_.region);

  update_channel_and_measurements();
  learning_epoch_boundary();
  process_handovers();
  schedule_cells();
  update_rates_and_rewards();
  clock_ms_ += kTtiMs;
}

KpiReport run_simulation(const RunConfig& cfg, uint64_t seed,
                         const std::string& point_label, KpiLog* out_log) {
  World world;
  world.init(cfg, seed);
  for (long t = 0; t < cfg.engine.duration_ms; t += kTtiMs) world.step();
  KpiLog log = world.take_log();
  log.point = point_label;
  KpiReport report = aggregate(log);
  if (out_log) *out_log = std::move(log);
  return report;
}

}  // namespace hetsim
