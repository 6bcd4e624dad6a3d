#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace urbanhuro {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded RNG with samplers whose algorithms are pinned here, so that
// replays are bit-identical regardless of the standard library build.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
  uint64_t uniform_index(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform_index(static_cast<uint64_t>(hi - lo) + 1));
  }

  double uniform01() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Knuth's product method; fine for the desk-scale rates used here.
  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double l = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > l);
    return k - 1;
  }

  double gaussian() {  // Box-Muller, one value per call
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace urbanhuro
