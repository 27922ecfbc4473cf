#include "multigroup/dp/laplace.hpp"

#include <cmath>
#include <stdexcept>

namespace multigroup::dp {

LaplaceSampler::LaplaceSampler(std::uint64_t seed, double scale,
                               bool forced_zero)
    : rng_(seed), scale_(scale), forced_zero_(forced_zero) {}

LaplaceSampler::LaplaceSampler(std::uint64_t seed, double scale)
    : LaplaceSampler(seed, scale, false) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("laplace scale must be positive");
  }
}

LaplaceSampler LaplaceSampler::zeroed(std::uint64_t seed) {
  return LaplaceSampler(seed, 0.0, true);
}

double LaplaceSampler::sample() { return sample_at(scale_); }

double LaplaceSampler::sample_at(double scale) {
  ++draws_;
  // u uniform in (-1/2, 1/2); both endpoints excluded so ln stays finite.
  const double u = rng_.uniform01_open() - 0.5;
  if (forced_zero_) return 0.0;
  if (!(scale > 0.0)) {
    throw std::invalid_argument("laplace scale must be positive");
  }
  if (u == 0.0) return 0.0;  // median
  const double sign = u > 0.0 ? 1.0 : -1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

}  // namespace multigroup::dp
