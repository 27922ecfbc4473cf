#include "multigroup/experiments/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multigroup/rng.hpp"

namespace multigroup::experiments {

double PiecewiseTarget::operator()(double x) const {
  std::size_t piece = 0;
  while (piece < breakpoints.size() && x >= breakpoints[piece]) ++piece;
  return values[piece];
}

PiecewiseTarget spatial_target() {
  PiecewiseTarget t;
  t.domain_lo = 0.0;
  t.domain_hi = 1.0;
  t.breakpoints = {0.25, 0.5, 0.75};
  t.values = {0.2, 0.8, 0.4, 0.9};
  return t;
}

core::Dataset gen_spatial(std::size_t n, double noise_sd, std::uint64_t seed,
                          const PiecewiseTarget& target) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  util::Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform(target.domain_lo, target.domain_hi);
    ys[i] = target(xs[i]) + rng.normal(noise_sd);
  }
  return core::Dataset::univariate(std::move(xs), std::move(ys));
}

core::Dataset gen_spatial(std::size_t n, double noise_sd, std::uint64_t seed) {
  return gen_spatial(n, noise_sd, seed, spatial_target());
}

core::GroupFamily interval_grid_groups(double center_step, double length_step) {
  const auto check_step = [](double step) {
    if (!(step > 0.0) || step > 1.0) return false;
    const double k = 1.0 / step;
    return std::abs(k - std::round(k)) < 1e-9;
  };
  if (!check_step(center_step) || !check_step(length_step)) {
    throw std::invalid_argument("steps must divide 1 evenly");
  }
  const auto nc = static_cast<std::size_t>(std::round(1.0 / center_step));
  const auto nl = static_cast<std::size_t>(std::round(1.0 / length_step));

  core::GroupFamily fam;
  int id = 0;
  for (std::size_t ci = 0; ci <= nc; ++ci) {
    const double c = static_cast<double>(ci) * center_step;
    for (std::size_t li = 1; li <= nl; ++li) {
      const double l = static_cast<double>(li) * length_step;
      fam.groups.push_back(
          core::Group::interval_group(id++, c - l / 2.0, c + l / 2.0));
    }
  }
  return fam;
}

PiecewiseTarget unbalanced_target(const UnbalancedConfig& cfg) {
  PiecewiseTarget t;
  t.domain_lo = 0.0;
  t.domain_hi = 1.0;
  t.breakpoints = {0.5, 0.625, 0.75, 0.875};
  t.values = {cfg.coarse_value, cfg.quarter_values[0], cfg.quarter_values[1],
              cfg.quarter_values[2], cfg.quarter_values[3]};
  return t;
}

Instance gen_unbalanced(const UnbalancedConfig& cfg, std::uint64_t seed) {
  if (cfg.n < 8) throw std::invalid_argument("n must be >= 8");
  const PiecewiseTarget target = unbalanced_target(cfg);

  util::Rng rng(seed);
  std::vector<double> xs(cfg.n), ys(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    xs[i] = rng.uniform01();
    ys[i] = target(xs[i]) + rng.normal(cfg.noise_sd);
  }

  // Half-open cells so the quarters partition the upper half exactly.
  core::GroupFamily fam;
  fam.groups.push_back(core::Group::all(0));
  fam.groups.push_back(core::Group::predicate(
      1, [](std::span<const double> x) { return x[0] < 0.5; }));
  fam.groups.push_back(core::Group::predicate(
      2, [](std::span<const double> x) { return x[0] >= 0.5; }));
  for (int q = 0; q < 4; ++q) {
    const double lo = 0.5 + 0.125 * q;
    const double hi = lo + 0.125;
    const bool last = q == 3;
    fam.groups.push_back(core::Group::predicate(
        3 + q, [lo, hi, last](std::span<const double> x) {
          return x[0] >= lo && (last ? x[0] <= 1.0 : x[0] < hi);
        }));
  }

  return {core::Dataset::univariate(std::move(xs), std::move(ys)),
          std::move(fam)};
}

Instance gen_unbalanced(std::size_t n, std::uint64_t seed) {
  UnbalancedConfig cfg;
  cfg.n = n;
  return gen_unbalanced(cfg, seed);
}

Instance gen_criterion(const CriterionConfig& cfg, std::uint64_t seed) {
  if (cfg.n < 10) throw std::invalid_argument("n must be >= 10");

  util::Rng rng(seed);
  std::vector<double> xs(cfg.n), ys(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double u = rng.uniform01();
    double x;
    if (u < cfg.bulk_share) {
      x = std::clamp(cfg.bulk_x_center + rng.normal(cfg.bulk_x_sd), 3.0, 5.0);
    } else if (u < cfg.bulk_share + cfg.left_share) {
      x = rng.uniform(0.0, 2.0);
    } else {
      x = rng.uniform(2.0, 3.0);
    }
    const double level = x <= 2.0   ? cfg.left_value
                         : x <= 3.0 ? cfg.tension_value
                                    : cfg.bulk_level;
    xs[i] = x;
    ys[i] = level + rng.normal(cfg.noise_sd);
  }

  core::GroupFamily fam;
  fam.groups.push_back(core::Group::interval_group(0, 0.0, 5.0));
  fam.groups.push_back(core::Group::interval_group(1, 0.0, 2.0));
  fam.groups.push_back(core::Group::interval_group(2, 2.0, 5.0));
  fam.groups.push_back(core::Group::interval_group(3, 2.0, 3.0));

  return {core::Dataset::univariate(std::move(xs), std::move(ys)),
          std::move(fam)};
}

Instance gen_criterion(std::size_t n, std::uint64_t seed) {
  CriterionConfig cfg;
  cfg.n = n;
  return gen_criterion(cfg, seed);
}

}  // namespace multigroup::experiments
