#pragma once

// Test-only helpers: small instance builders plus reference oracles that
// stay independent of the library's kernels (naive ascending loops and
// evaluate_chain only).

#include <vector>

#include "multigroup/chain.hpp"
#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/loss.hpp"
#include "multigroup/rng.hpp"

namespace testutil {

using multigroup::core::BoundedLoss;
using multigroup::core::Dataset;
using multigroup::core::Group;
using multigroup::core::GroupFamily;
using multigroup::core::Hypothesis;
using multigroup::core::HypothesisClass;
using multigroup::core::UpdateChain;
using multigroup::util::Rng;

struct RandomInstance {
  Dataset data;
  GroupFamily groups;
  HypothesisClass hyps;
};

// 1-D data on [0,1] with targets in [0,1], random interval groups (the
// first one always covers the domain) and random constant hypotheses.
inline RandomInstance random_instance(Rng& rng, std::size_t max_n,
                                      std::size_t max_groups,
                                      std::size_t max_hyps) {
  const std::size_t n = 2 + rng.below(max_n - 1);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform01();
    ys[i] = rng.uniform01();
  }

  GroupFamily fam;
  const std::size_t num_groups = 1 + rng.below(max_groups);
  fam.groups.push_back(Group::interval_group(0, 0.0, 1.0));
  for (std::size_t g = 1; g < num_groups; ++g) {
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    fam.groups.push_back(Group::interval_group(static_cast<int>(g),
                                               std::min(a, b), std::max(a, b)));
  }

  const std::size_t num_hyps = 1 + rng.below(max_hyps);
  std::vector<double> consts(num_hyps);
  for (auto& c : consts) c = rng.uniform01();

  return {Dataset::univariate(std::move(xs), std::move(ys)), std::move(fam),
          HypothesisClass::constants(consts)};
}

// Reference acceptance statistic of a finished chain on one pair, rebuilt
// from scratch: chain evaluated per record, sums taken in ascending index
// order.
inline double reference_statistic(const Dataset& d, const Group& g,
                                  const Hypothesis& h, const BoundedLoss& loss,
                                  const UpdateChain& chain, bool weighted,
                                  bool fractional, double eta) {
  double sum_f = 0.0;
  double sum_target = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!g.indicator(d.x(i))) continue;
    ++count;
    const double fv = chain.evaluate(d.x(i));
    const double hv = h.predict(d.x(i));
    sum_f += loss.eval(fv, d.y(i));
    const double target =
        fractional ? multigroup::core::blend(fv, hv, eta) : hv;
    sum_target += loss.eval(target, d.y(i));
  }
  if (count == 0) return 0.0;
  const double denom =
      weighted ? static_cast<double>(d.size()) : static_cast<double>(count);
  return (sum_f - sum_target) / denom;
}

// Max reference statistic over all non-empty pairs.
inline double reference_max_statistic(const Dataset& d, const GroupFamily& fam,
                                      const HypothesisClass& hyps,
                                      const BoundedLoss& loss,
                                      const UpdateChain& chain, bool weighted,
                                      bool fractional, double eta) {
  double best = 0.0;
  bool have = false;
  for (const auto& g : fam.groups) {
    bool nonempty = false;
    for (std::size_t i = 0; i < d.size() && !nonempty; ++i) {
      nonempty = g.indicator(d.x(i));
    }
    if (!nonempty) continue;
    for (const auto& h : hyps.hyps) {
      const double s =
          reference_statistic(d, g, h, loss, chain, weighted, fractional, eta);
      if (!have || s > best) {
        best = s;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace testutil
