#include "hetsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hetsim {

using nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double percentile(std::span<const double> sorted_values, double q) {
  if (sorted_values.empty()) throw std::invalid_argument("percentile of empty set");
  if (sorted_values.size() == 1) return sorted_values[0];
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 *
                     static_cast<double>(sorted_values.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted_values[lo] + (sorted_values[hi] - sorted_values[lo]) * frac;
}

std::vector<double> per_ue_mean_rates(const KpiLog& log) {
  std::vector<double> mean(log.ue_count, 0.0);
  if (log.ue_count == 0) return mean;
  const uint32_t first = log.warmup_ms;
  if (first >= log.duration_ms) return mean;
  const double window = static_cast<double>(log.duration_ms - first);
  for (uint32_t t = first; t < log.duration_ms; ++t)
    for (uint32_t u = 0; u < log.ue_count; ++u) mean[u] += log.ue_rate(t, u);
  for (double& m : mean) m /= window;
  return mean;
}

std::vector<CdfPoint> throughput_cdf(std::span<const double> per_ue_rates) {
  if (per_ue_rates.empty()) throw std::invalid_argument("throughput_cdf of empty set");
  std::vector<double> sorted(per_ue_rates.begin(), per_ue_rates.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> cdf;
  cdf.reserve(101);
  for (int p = 0; p <= 100; ++p)
    cdf.push_back({static_cast<double>(p), percentile(sorted, static_cast<double>(p))});
  return cdf;
}

HandoverCounts count_events(const KpiLog& log) {
  HandoverCounts counts;
  for (const auto& e : log.events) {
    if (e.time_ms < log.warmup_ms) continue;
    switch (e.kind) {
      case HoEventKind::trigger: ++counts.triggers; break;
      case HoEventKind::success: ++counts.successes; break;
      case HoEventKind::hof: ++counts.hofs; break;
      case HoEventKind::pingpong: ++counts.pingpongs; break;
    }
  }
  return counts;
}

double hof_probability(const KpiLog& log) {
  const HandoverCounts c = count_events(log);
  const long attempts = c.hofs + c.successes;
  return attempts > 0 ? static_cast<double>(c.hofs) / static_cast<double>(attempts) : 0.0;
}

double pp_probability(const KpiLog& log) {
  const HandoverCounts c = count_events(log);
  return c.successes > 0 ? static_cast<double>(c.pingpongs) / static_cast<double>(c.successes)
                         : 0.0;
}

double sum_rate(const KpiLog& log) {
  const uint32_t first = log.warmup_ms;
  if (first >= log.duration_ms || log.ue_count == 0) return 0.0;
  double total = 0.0;
  for (uint32_t t = first; t < log.duration_ms; ++t)
    for (uint32_t u = 0; u < log.ue_count; ++u) total += log.ue_rate(t, u);
  return total / static_cast<double>(log.duration_ms - first);
}

KpiReport aggregate(const KpiLog& log) {
  KpiReport r;
  r.point = log.point;
  r.seed = log.seed;
  r.duration_ms = log.duration_ms;
  r.warmup_ms = log.warmup_ms;

  r.ue_mean_rate_bps = per_ue_mean_rates(log);
  if (!r.ue_mean_rate_bps.empty()) {
    std::vector<double> sorted = r.ue_mean_rate_bps;
    std::sort(sorted.begin(), sorted.end());
    r.throughput_p5_bps = percentile(sorted, 5.0);
    r.throughput_p50_bps = percentile(sorted, 50.0);
    r.throughput_p95_bps = percentile(sorted, 95.0);
    r.ue_throughput_cdf = throughput_cdf(r.ue_mean_rate_bps);
  }
  r.sum_rate_bps = sum_rate(log);
  r.hof_probability = hof_probability(log);
  r.pp_probability = pp_probability(log);
  r.handover_counts = count_events(log);

  r.cell_mean_load_bps.assign(log.cell_count, 0.0);
  if (log.warmup_ms < log.duration_ms && log.cell_count > 0) {
    const double window = static_cast<double>(log.duration_ms - log.warmup_ms);
    for (uint32_t t = log.warmup_ms; t < log.duration_ms; ++t)
      for (uint32_t c = 0; c < log.cell_count; ++c)
        r.cell_mean_load_bps[c] += log.cell_load(t, c);
    for (double& l : r.cell_mean_load_bps) l /= window;
  }
  return r;
}

ordered_json KpiReport::to_json() const {
  ordered_json j;
  j["schema"] = schema;
  j["point"] = point;
  j["seed"] = seed;
  j["duration_ms"] = duration_ms;
  j["warmup_ms"] = warmup_ms;
  j["sum_rate_bps"] = sum_rate_bps;
  j["throughput_p5_bps"] = throughput_p5_bps;
  j["throughput_p50_bps"] = throughput_p50_bps;
  j["throughput_p95_bps"] = throughput_p95_bps;
  ordered_json cdf = ordered_json::array();
  for (const auto& p : ue_throughput_cdf) cdf.push_back({p.percentile, p.value_bps});
  j["ue_throughput_cdf"] = cdf;
  j["hof_probability"] = hof_probability;
  j["pp_probability"] = pp_probability;
  j["handover_counts"] = {{"triggers", handover_counts.triggers},
                          {"successes", handover_counts.successes},
                          {"hofs", handover_counts.hofs},
                          {"pingpongs", handover_counts.pingpongs}};
  j["cell_mean_load_bps"] = cell_mean_load_bps;
  j["ue_mean_rate_bps"] = ue_mean_rate_bps;
  return j;
}

KpiReport KpiReport::from_json(const nlohmann::json& j) {
  KpiReport r;
  r.schema = j.at("schema").get<int>();
  r.point = j.at("point").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  r.duration_ms = j.at("duration_ms").get<uint32_t>();
  r.warmup_ms = j.at("warmup_ms").get<uint32_t>();
  r.sum_rate_bps = j.at("sum_rate_bps").get<double>();
  r.throughput_p5_bps = j.at("throughput_p5_bps").get<double>();
  r.throughput_p50_bps = j.at("throughput_p50_bps").get<double>();
  r.throughput_p95_bps = j.at("throughput_p95_bps").get<double>();
  for (const auto& p : j.at("ue_throughput_cdf"))
    r.ue_throughput_cdf.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  r.hof_probability = j.at("hof_probability").get<double>();
  r.pp_probability = j.at("pp_probability").get<double>();
  const auto& hc = j.at("handover_counts");
  r.handover_counts.triggers = hc.at("triggers").get<long>();
  r.handover_counts.successes = hc.at("successes").get<long>();
  r.handover_counts.hofs = hc.at("hofs").get<long>();
  r.handover_counts.pingpongs = hc.at("pingpongs").get<long>();
  r.cell_mean_load_bps = j.at("cell_mean_load_bps").get<std::vector<double>>();
  r.ue_mean_rate_bps = j.at("ue_mean_rate_bps").get<std::vector<double>>();
  return r;
}

std::string KpiReport::cdf_csv() const {
  std::string out = "percentile,throughput_bps\n";
  for (const auto& p : ue_throughput_cdf) {
    out += format_double(p.percentile);
    out += ',';
    out += format_double(p.value_bps);
    out += '\n';
  }
  return out;
}

}  // namespace hetsim
