#pragma once

#include <cmath>
#include <cstdint>

namespace cotar {

// Counter-based splittable random stream (splitmix64 core). Substreams are
// derived by key so that every (point, trial, row) draw is reproducible
// independently of evaluation order and worker count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(mix(seed ^ kPhi)) {}

  RandomStream fork(std::uint64_t key) const {
    RandomStream s(0);
    s.state_ = mix(state_ ^ mix(key + kPhi));
    return s;
  }

  std::uint64_t next_u64() {
    state_ += kPhi;
    return mix(state_);
  }

  // Uniform in (0, 1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (two uniforms per draw, no caching, so the
  // stream state is independent of how many draws preceded it).
  double next_gaussian() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  static constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace cotar
