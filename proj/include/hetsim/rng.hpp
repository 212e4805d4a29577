// Named, independently seeded random streams.
//
// Every stochastic subsystem draws from its own stream derived from the
// master seed, so changing the draw pattern of one subsystem cannot perturb
// another. Distributions are hand-rolled on top of mt19937_64 instead of
// <random> distribution objects: the standard leaves those
// implementation-defined, and the simulator promises bit-identical replays.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hetsim {

class RngStream {
 public:
  RngStream() : engine_(0) {}
  RngStream(uint64_t master_seed, std::string_view stream_name)
      : engine_(derive_seed(master_seed, stream_name)) {}

  static uint64_t derive_seed(uint64_t master_seed, std::string_view name) {
    // FNV-1a over the stream name, mixed with the master seed.
    uint64_t h = 14695981039346656037ull;
    for (char c : name) {
      h ^= static_cast<uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    h ^= master_seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive, rejection-free modulo bias kept
  // negligible for the small ranges used here.
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  // Standard normal via Marsaglia polar method, one spare cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  template <typename T>
  const T& pick(const std::vector<T>& values) {
    return values[static_cast<size_t>(uniform_int(0, static_cast<int>(values.size()) - 1))];
  }

  // Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = uniform_int(0, i);
      std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]);
    }
    return p;
  }

  // Samples an index from a discrete distribution; weights need not be
  // normalized. Falls back to the last index on accumulated rounding.
  int sample_discrete(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = uniform() * total;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
      r -= weights[i];
      if (r < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hetsim
