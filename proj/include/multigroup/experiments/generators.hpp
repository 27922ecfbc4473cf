#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"

namespace multigroup::experiments {

// Piecewise-constant target on [domain_lo, domain_hi]: interior breakpoints
// ascending, one value per piece (pieces are [b_{k-1}, b_k)).
struct PiecewiseTarget {
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  std::vector<double> breakpoints;
  std::vector<double> values;

  double operator()(double x) const;
};

struct Instance {
  core::Dataset data;
  core::GroupFamily groups;
};

// ---- spatial ---------------------------------------------------------------

// Default 4-piece step target on [0,1]: pieces at 0.25/0.5/0.75 with values
// 0.2, 0.8, 0.4, 0.9.
PiecewiseTarget spatial_target();

// x uniform on [0,1]; y = target(x) + Normal(0, noise_sd^2).
core::Dataset gen_spatial(std::size_t n, double noise_sd, std::uint64_t seed);
core::Dataset gen_spatial(std::size_t n, double noise_sd, std::uint64_t seed,
                          const PiecewiseTarget& target);

// Intervals [c - l/2, c + l/2] for centers on the center_step grid of [0,1]
// and lengths on the length_step grid of (0,1]. Steps must divide 1 evenly;
// the defaults give 21 * 20 = 420 groups.
core::GroupFamily interval_grid_groups(double center_step = 0.05,
                                       double length_step = 0.05);

// ---- unbalanced -------------------------------------------------------------

struct UnbalancedConfig {
  std::size_t n = 120;
  double noise_sd = 0.2;
  double coarse_value = 0.3;  // target on the unrefined half [0, 0.5)
  // Targets on the four quarters of [0.5, 1]; deviations from their mean
  // are small on purpose, so refining is a bias/variance decision rather
  // than a necessity.
  std::array<double, 4> quarter_values{0.55, 0.7, 0.6, 0.65};
};

// Layered family: group 0 covers the domain, groups 1-2 are halves, groups
// 3-6 quarter the upper half only. Quarters partition group 2's support and
// are disjoint from group 1.
Instance gen_unbalanced(const UnbalancedConfig& cfg, std::uint64_t seed);
Instance gen_unbalanced(std::size_t n, std::uint64_t seed);
PiecewiseTarget unbalanced_target(const UnbalancedConfig& cfg);

// ---- criterion selection ----------------------------------------------------

struct CriterionConfig {
  std::size_t n = 260;
  double noise_sd = 0.1;
  // Observation bulk: x concentrates near 4.1 inside [3,5] with target
  // level 4.1, so the initial constant fit lands near 4.
  double bulk_share = 0.70;
  double bulk_x_center = 4.1;
  double bulk_x_sd = 0.3;
  double bulk_level = 4.1;
  // Left region [0,2]: clearly off the bulk level, the natural first fix.
  double left_share = 0.22;
  double left_value = 4.5;
  // Group 3 (= [2,3]) carries the tension: moving the wide group [2,5]
  // toward its own best constant drags [2,3] away from this value.
  double tension_value = 4.4;
};

// Overlapping groups on [0,5]: 0 = [0,5], 1 = [0,2], 2 = [2,5], 3 = [2,3];
// group 3 has the smallest sample share.
Instance gen_criterion(const CriterionConfig& cfg, std::uint64_t seed);
Instance gen_criterion(std::size_t n, std::uint64_t seed);

}  // namespace multigroup::experiments
