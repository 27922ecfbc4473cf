#include "multigroup/learners/sleeping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multigroup/kernels.hpp"
#include "multigroup/rng.hpp"

namespace multigroup::learners {

SleepingExpertPredictor::SleepingExpertPredictor(
    core::GroupFamily groups, core::HypothesisClass hyps,
    std::vector<std::vector<double>> snapshots, bool classification)
    : groups_(std::move(groups)),
      hyps_(std::move(hyps)),
      snapshots_(std::move(snapshots)),
      classification_(classification) {}

double SleepingExpertPredictor::predict(std::span<const double> x) const {
  const std::size_t num_hyps = hyps_.size();
  std::vector<double> hv(num_hyps);
  for (std::size_t h = 0; h < num_hyps; ++h) {
    hv[h] = hyps_.hyps[h].predict(x);
  }
  std::vector<char> awake(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    awake[g] = groups_.groups[g].indicator(x) ? 1 : 0;
  }

  double first = 0.0;
  double acc = 0.0;  // deviations from the first rule; exact when all agree
  std::size_t votes = 0;
  for (std::size_t r = 0; r < snapshots_.size(); ++r) {
    const auto& w = snapshots_[r];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (!awake[g]) continue;
      for (std::size_t h = 0; h < num_hyps; ++h) {
        const double we = w[g * num_hyps + h];
        num += we * hv[h];
        den += we;
      }
    }
    if (den == 0.0) {
      // No expert awake at x: fall back to the all-experts mixture.
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        for (std::size_t h = 0; h < num_hyps; ++h) {
          const double we = w[g * num_hyps + h];
          num += we * hv[h];
          den += we;
        }
      }
    }
    const double rule = den > 0.0 ? num / den : 0.0;
    if (classification_) {
      votes += rule > 0.5 ? 1 : 0;
    } else if (r == 0) {
      first = rule;
    } else {
      acc += rule - first;
    }
  }
  if (classification_) {
    return 2 * votes >= snapshots_.size() ? 1.0 : 0.0;
  }
  return first + acc / static_cast<double>(snapshots_.size());
}

core::PredictorFn SleepingExpertPredictor::as_predictor() const {
  SleepingExpertPredictor self = *this;
  return [self](std::span<const double> x) { return self.predict(x); };
}

SleepingExpertResult sleeping_expert(const core::Dataset& d,
                                     const core::GroupFamily& groups,
                                     const core::HypothesisClass& hyps,
                                     const core::BoundedLoss& loss,
                                     const LearnerConfig& config) {
  groups.validate();
  hyps.validate();
  if (!(config.learning_rate >= 0.0)) {
    throw std::invalid_argument("learning rate must be >= 0");
  }
  if (config.expert_samples == 0) {
    throw std::invalid_argument("expert_samples must be >= 1");
  }

  const std::size_t n = d.size();
  const std::size_t num_hyps = hyps.size();
  const std::size_t num_experts = groups.size() * num_hyps;

  const core::GroupIndex gi = core::GroupIndex::build(groups, d);
  std::vector<std::vector<double>> hyp_losses(num_hyps);
  for (std::size_t h = 0; h < num_hyps; ++h) {
    hyp_losses[h] = kernels::losses_of_values(
        d, kernels::predict_all(d, hyps.hyps[h].predict), loss);
  }

  util::Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  // Steps whose entering weights become mixture components: step j uses the
  // weights after j processed records, j uniform over 0..n-1.
  std::vector<std::size_t> wanted(config.expert_samples);
  for (auto& w : wanted) w = rng.below(n);
  std::sort(wanted.begin(), wanted.end());

  std::vector<double> weights(num_experts, 1.0);
  std::vector<std::vector<double>> snapshots;
  snapshots.reserve(config.expert_samples);
  std::size_t next_wanted = 0;

  for (std::size_t step = 0; step < n; ++step) {
    while (next_wanted < wanted.size() && wanted[next_wanted] == step) {
      snapshots.push_back(weights);
      ++next_wanted;
    }
    const std::size_t rec = order[step];
    std::size_t awake = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      awake += gi.masks[g].test(rec) ? num_hyps : 0;
    }
    // The rule only moves relative weight among awake experts; a lone
    // awake expert is a no-op (and skipping keeps its weight bit-exact).
    if (awake <= 1) continue;

    // Exponential update on awake experts, then rescale so the awake mass
    // is unchanged (sleeping experts never lose ground while asleep).
    double mass_before = 0.0;
    double mass_after = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!gi.masks[g].test(rec)) continue;
      for (std::size_t h = 0; h < num_hyps; ++h) {
        const std::size_t e = g * num_hyps + h;
        mass_before += weights[e];
        weights[e] *= std::exp(-config.learning_rate * hyp_losses[h][rec]);
        mass_after += weights[e];
      }
    }
    if (mass_after > 0.0 && mass_before > 0.0) {
      const double rescale = mass_before / mass_after;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (!gi.masks[g].test(rec)) continue;
        for (std::size_t h = 0; h < num_hyps; ++h) {
          weights[g * num_hyps + h] *= rescale;
        }
      }
    }
  }
  while (next_wanted < wanted.size()) {
    // wanted[k] == n never happens (below(n) < n), but keep the tail safe.
    snapshots.push_back(weights);
    ++next_wanted;
  }

  core::RunTrace trace;
  trace.method = method_name(Method::SleepingExpert);
  trace.seed = config.seed;
  trace.learning_rate = config.learning_rate;
  trace.expert_samples = config.expert_samples;
  trace.completed = true;
  double alpha = 0.0;
  for (std::size_t h = 0; h < num_hyps; ++h) {
    const double mean = std::accumulate(hyp_losses[h].begin(),
                                        hyp_losses[h].end(), 0.0) /
                        static_cast<double>(n);
    alpha = h == 0 ? mean : std::min(alpha, mean);
  }
  trace.alpha = alpha;

  return {SleepingExpertPredictor(groups, hyps, std::move(snapshots),
                                  config.classification),
          trace};
}

}  // namespace multigroup::learners
