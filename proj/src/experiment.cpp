#include "hetsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "hetsim/engine.hpp"

namespace hetsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string value_to_label(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  return v.dump();
}

void set_by_path(json& root, const std::string& dotted, const json& value) {
  json* node = &root;
  size_t start = 0;
  while (true) {
    const size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << contents;
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string resolve_axis_path(const std::string& axis) {
  if (axis == "pico_count") return "scenario.picos_per_sector";
  if (axis == "ue_count") return "scenario.ues_per_sector";
  if (axis == "ttt_ms") return "handover.ttt_ms";
  if (axis == "learner") return "learning.learner";
  if (axis == "fixed_velocity_kmh") return "scenario.fixed_velocity_kmh";
  if (axis == "duration_ms") return "engine.duration_ms";
  if (axis.find('.') != std::string::npos) return axis;
  return "";
}

std::vector<SweepPoint> expand_sweep(const RunConfig& base, std::string* error) {
  std::vector<SweepPoint> points;

  struct Axis {
    std::string name;
    std::string path;
    std::vector<json> values;
  };
  std::vector<Axis> axes;
  for (const auto& [name, values] : base.sweep) {
    const std::string path = resolve_axis_path(name);
    if (path.empty()) {
      if (error) *error = "sweep." + name + ": unknown axis (use a known alias or a dotted config path)";
      return {};
    }
    Axis axis{name, path, {}};
    for (const auto& v : values) axis.values.push_back(v);
    axes.push_back(std::move(axis));
  }

  json base_json = to_json(base);
  base_json["sweep"] = json::object();  // points carry no nested sweep

  std::vector<size_t> index(axes.size(), 0);
  while (true) {
    json point_json = base_json;
    std::string label;
    for (size_t a = 0; a < axes.size(); ++a) {
      const json& v = axes[a].values[index[a]];
      set_by_path(point_json, axes[a].path, v);
      if (!label.empty()) label += "__";
      label += axes[a].name + "=" + value_to_label(v);
    }

    RunConfig point_cfg;
    try {
      point_cfg = config_from_json(point_json, nullptr);
    } catch (const ConfigErrorException& e) {
      if (error) *error = std::string("sweep point ") + (label.empty() ? "<base>" : label) +
                          ": " + e.what();
      return {};
    }
    for (uint64_t seed : base.seeds) {
      SweepPoint p;
      p.label = (label.empty() ? std::string("seed=") : label + "__seed=") +
                std::to_string(seed);
      p.config = point_cfg;
      p.seed = seed;
      points.push_back(std::move(p));
    }

    size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++index[a] < axes[a].values.size()) break;
      index[a] = 0;
      if (a == 0) return points;
    }
    if (axes.empty()) return points;
  }
}

std::string summary_csv_header() {
  return "point,seed,sum_rate_bps,throughput_p5_bps,throughput_p50_bps,"
         "throughput_p95_bps,hof_probability,pp_probability,triggers,successes,hofs,"
         "pingpongs\n";
}

std::string summary_csv_row(const std::string& label, uint64_t seed, const KpiReport& r) {
  std::string row = label;
  row += ',' + std::to_string(seed);
  row += ',' + format_double(r.sum_rate_bps);
  row += ',' + format_double(r.throughput_p5_bps);
  row += ',' + format_double(r.throughput_p50_bps);
  row += ',' + format_double(r.throughput_p95_bps);
  row += ',' + format_double(r.hof_probability);
  row += ',' + format_double(r.pp_probability);
  row += ',' + std::to_string(r.handover_counts.triggers);
  row += ',' + std::to_string(r.handover_counts.successes);
  row += ',' + std::to_string(r.handover_counts.hofs);
  row += ',' + std::to_string(r.handover_counts.pingpongs);
  row += '\n';
  return row;
}

int run_experiment(const RunConfig& cfg_in, const ExperimentOptions& opts) {
  RunConfig cfg = cfg_in;
  if (opts.seed_override) cfg.seeds = {*opts.seed_override};
  if (!opts.output_dir_override.empty()) cfg.output_dir = opts.output_dir_override;

  std::string err;
  std::vector<SweepPoint> points = expand_sweep(cfg, &err);
  if (points.empty() && !err.empty()) {
    std::cerr << "config error: " << err << "\n";
    return 1;
  }

  std::cout << "experiment: " << points.size() << " run(s) ("
            << (cfg.sweep.empty() ? 1 : points.size() / cfg.seeds.size()) << " sweep point(s) x "
            << cfg.seeds.size() << " seed(s))\n";
  if (opts.dry_run) {
    for (const auto& p : points) std::cout << "  " << p.label << "\n";
    return 0;
  }

  fs::create_directories(cfg.output_dir);
  write_file_atomic((fs::path(cfg.output_dir) / "effective_config.json").string(),
                    to_json(cfg).dump(2) + "\n");

  std::vector<KpiReport> reports(points.size());
  std::vector<std::string> failures(points.size());
  std::atomic<size_t> next{0};
  std::mutex io_mutex;

  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      const SweepPoint& p = points[i];
      try {
        KpiLog log;
        reports[i] = run_simulation(p.config, p.seed, p.label, &log);
        const fs::path base = fs::path(cfg.output_dir) / p.label;
        log.save(base.string() + ".log.tmp");
        fs::rename(base.string() + ".log.tmp", base.string() + ".log");
        write_file_atomic(base.string() + ".json", reports[i].to_json().dump(2) + "\n");
        write_file_atomic(base.string() + "_cdf.csv", reports[i].cdf_csv());
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << "  done " << p.label << "\n";
      } catch (const std::exception& e) {
        failures[i] = e.what();
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "  FAILED " << p.label << ": " << e.what() << "\n";
      }
    }
  };

  const int n_workers = std::max(1, opts.workers);
  std::vector<std::thread> threads;
  for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  // Summary rows in point order, independent of completion order.
  std::string summary = summary_csv_header();
  bool any_failed = false;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!failures[i].empty()) {
      any_failed = true;
      continue;
    }
    summary += summary_csv_row(points[i].label, points[i].seed, reports[i]);
  }
  write_file_atomic((fs::path(cfg.output_dir) / "summary.csv").string(), summary);
  return any_failed ? 2 : 0;
}

int reaggregate_directory(const std::string& dir) {
  std::vector<fs::path> logs;
  if (!fs::is_directory(dir)) {
    std::cerr << "report: " << dir << " is not a directory\n";
    return 1;
  }
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".log")
      logs.push_back(entry.path());
  std::sort(logs.begin(), logs.end());

  std::string summary = summary_csv_header();
  for (const auto& path : logs) {
    try {
      const KpiLog log = KpiLog::load(path.string());
      const KpiReport report = aggregate(log);
      fs::path base = path;
      base.replace_extension();
      write_file_atomic(base.string() + ".json", report.to_json().dump(2) + "\n");
      write_file_atomic(base.string() + "_cdf.csv", report.cdf_csv());
      summary += summary_csv_row(log.point, log.seed, report);
      std::cout << "  re-aggregated " << path.filename().string() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "report: " << path.string() << ": " << e.what() << "\n";
      return 2;
    }
  }
  write_file_atomic((fs::path(dir) / "summary.csv").string(), summary);
  return 0;
}

}  // namespace hetsim
