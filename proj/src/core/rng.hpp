#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace polyprof {

// All randomness in the library flows through the two generators below so
// that outputs are bit-identical across platforms. std::mt19937_64 has a
// standard-specified output sequence; the distribution transforms are our
// own because the std:: distributions are implementation-defined.

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stateless mix of (seed, index); used to derive per-sample and per-worker
// streams whose values do not depend on worker count or evaluation order.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

inline double u64_to_unit_double(uint64_t v) {
  // 53 high bits -> [0, 1)
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() { return u64_to_unit_double(next_u64()); }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // unbiased integer in [0, n): 128-bit multiply trick, no modulo bias
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // standard normal via Box-Muller; second value of each pair is cached
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// Counter-based point stream: coordinate j of sample i depends only on
// (seed, i, j), so sampling can be partitioned across workers arbitrarily
// and prefixes are stable as the sample count grows.
class SampleStream {
 public:
  explicit SampleStream(uint64_t seed) : seed_(seed) {}

  double coord(uint64_t sample_index, uint64_t coord_index) const {
    uint64_t s = mix_seed(seed_, sample_index);
    s ^= 0xd6e8feb86659fd93ull * (coord_index + 1);
    splitmix64(s);
    return u64_to_unit_double(splitmix64(s));
  }

 private:
  uint64_t seed_;
};

}  // namespace polyprof
