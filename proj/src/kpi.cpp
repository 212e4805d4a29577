#include "hetsim/kpi.hpp"

#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace hetsim {

namespace {

constexpr char kMagic[8] = {'H', 'K', 'P', 'I', 'L', 'O', 'G', '1'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

template <typename T>
void write_scalar(std::FILE* f, const T& v) {
  if (std::fwrite(&v, sizeof(T), 1, f) != 1)
    throw std::runtime_error("kpi log write failed");
}

template <typename T>
void read_scalar(std::FILE* f, T& v) {
  if (std::fread(&v, sizeof(T), 1, f) != 1)
    throw std::runtime_error("kpi log truncated");
}

template <typename T>
void write_block(std::FILE* f, const T* data, size_t n) {
  if (n > 0 && std::fwrite(data, sizeof(T), n, f) != n)
    throw std::runtime_error("kpi log write failed");
}

template <typename T>
void read_block(std::FILE* f, T* data, size_t n) {
  if (n > 0 && std::fread(data, sizeof(T), n, f) != n)
    throw std::runtime_error("kpi log truncated");
}

}  // namespace

void KpiLog::save(const std::string& path) const {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_block(f.get(), kMagic, sizeof(kMagic));
  write_scalar(f.get(), seed);
  write_scalar(f.get(), ue_count);
  write_scalar(f.get(), cell_count);
  write_scalar(f.get(), duration_ms);
  write_scalar(f.get(), warmup_ms);
  const uint32_t point_len = static_cast<uint32_t>(point.size());
  write_scalar(f.get(), point_len);
  write_block(f.get(), point.data(), point.size());

  const uint64_t event_count = events.size();
  write_scalar(f.get(), event_count);
  for (const auto& e : events) {
    write_scalar(f.get(), e.time_ms);
    write_scalar(f.get(), e.ue);
    write_scalar(f.get(), e.source);
    write_scalar(f.get(), e.target);
    write_scalar(f.get(), static_cast<uint8_t>(e.kind));
  }

  const uint64_t rate_count = ue_rate_bps.size();
  write_scalar(f.get(), rate_count);
  write_block(f.get(), ue_rate_bps.data(), ue_rate_bps.size());
  const uint64_t load_count = cell_load_bps.size();
  write_scalar(f.get(), load_count);
  write_block(f.get(), cell_load_bps.data(), cell_load_bps.size());
}

KpiLog KpiLog::load(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[8];
  read_block(f.get(), magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error(path + " is not a KPI log");

  KpiLog log;
  read_scalar(f.get(), log.seed);
  read_scalar(f.get(), log.ue_count);
  read_scalar(f.get(), log.cell_count);
  read_scalar(f.get(), log.duration_ms);
  read_scalar(f.get(), log.warmup_ms);
  uint32_t point_len = 0;
  read_scalar(f.get(), point_len);
  log.point.resize(point_len);
  read_block(f.get(), log.point.data(), point_len);

  uint64_t event_count = 0;
  read_scalar(f.get(), event_count);
  log.events.resize(event_count);
  for (auto& e : log.events) {
    read_scalar(f.get(), e.time_ms);
    read_scalar(f.get(), e.ue);
    read_scalar(f.get(), e.source);
    read_scalar(f.get(), e.target);
    uint8_t kind = 0;
    read_scalar(f.get(), kind);
    e.kind = static_cast<HoEventKind>(kind);
  }

  uint64_t rate_count = 0;
  read_scalar(f.get(), rate_count);
  log.ue_rate_bps.resize(rate_count);
  read_block(f.get(), log.ue_rate_bps.data(), rate_count);
  uint64_t load_count = 0;
  read_scalar(f.get(), load_count);
  log.cell_load_bps.resize(load_count);
  read_block(f.get(), log.cell_load_bps.data(), load_count);
  return log;
}

}  // namespace hetsim
