// Append-only KPI event log and its binary on-disk form.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hetsim {

enum class HoEventKind : uint8_t { trigger = 0, success = 1, hof = 2, pingpong = 3 };

struct HoEvent {
  uint32_t time_ms = 0;
  uint16_t ue = 0;
  uint16_t source = 0;
  uint16_t target = 0;
  HoEventKind kind = HoEventKind::trigger;
};

// Raw per-run measurement stream: handover events plus dense per-TTI per-UE
// rates and per-TTI per-cell loads. Aggregation (metrics.hpp) is a pure
// function of this structure.
struct KpiLog {
  uint64_t seed = 0;
  uint32_t ue_count = 0;
  uint32_t cell_count = 0;
  uint32_t duration_ms = 0;
  uint32_t warmup_ms = 0;
  std::string point;  // sweep point label

  std::vector<HoEvent> events;
  std::vector<double> ue_rate_bps;    // [tti * ue_count + ue]
  std::vector<double> cell_load_bps;  // [tti * cell_count + cell]

  double ue_rate(uint32_t tti, uint32_t ue) const {
    return ue_rate_bps[static_cast<size_t>(tti) * ue_count + ue];
  }
  double cell_load(uint32_t tti, uint32_t cell) const {
    return cell_load_bps[static_cast<size_t>(tti) * cell_count + cell];
  }

  void save(const std::string& path) const;
  static KpiLog load(const std::string& path);
};

}  // namespace hetsim
