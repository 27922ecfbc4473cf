#pragma once

#include <cstdint>

#include "multigroup/rng.hpp"

namespace multigroup::dp {

// Seedable Laplace noise source. Sampling is by inverse CDF: for u uniform
// in (-1/2, 1/2), the draw is -scale * sign(u) * ln(1 - 2|u|). Identical
// seeds give identical streams.
//
// A zeroed sampler (noise-off test mode) returns 0 from every draw while
// still consuming the underlying uniform, so seeded runs stay aligned
// between noisy and noise-free configurations.
class LaplaceSampler {
 public:
  LaplaceSampler(std::uint64_t seed, double scale);
  static LaplaceSampler zeroed(std::uint64_t seed);

  double scale() const { return scale_; }
  bool noise_off() const { return forced_zero_; }
  std::uint64_t draws() const { return draws_; }

  // One draw at the sampler's own scale.
  double sample();
  // One draw at an explicit scale (the mechanism uses 2*sigma for queries).
  double sample_at(double scale);

 private:
  LaplaceSampler(std::uint64_t seed, double scale, bool forced_zero);
  util::Rng rng_;
  double scale_;
  bool forced_zero_;
  std::uint64_t draws_ = 0;
};

}  // namespace multigroup::dp
