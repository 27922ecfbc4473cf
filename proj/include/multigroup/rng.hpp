#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace multigroup::util {

// Deterministic RNG wrapper. mt19937_64 is fully specified by the standard,
// and all real-valued mappings are done here explicitly, so identical seeds
// give identical streams on every platform. Never use std::*_distribution
// (their algorithms are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1), endpoints excluded
  double uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; consumes two uniforms per draw.
  double normal(double sd) {
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return sd * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace multigroup::util
