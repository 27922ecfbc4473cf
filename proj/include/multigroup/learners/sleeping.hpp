#pragma once

#include <vector>

#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/learners/config.hpp"
#include "multigroup/loss.hpp"
#include "multigroup/trace.hpp"

namespace multigroup::learners {

// Randomized predictor produced by the sleeping-experts baseline: a uniform
// mixture over per-step aggregate rules, represented by weight snapshots
// over the expert set G x H. Prediction averages (regression) or
// majority-votes (classification) the sampled rules.
class SleepingExpertPredictor {
 public:
  SleepingExpertPredictor(core::GroupFamily groups, core::HypothesisClass hyps,
                          std::vector<std::vector<double>> snapshots,
                          bool classification);

  double predict(std::span<const double> x) const;
  core::PredictorFn as_predictor() const;

  std::size_t num_snapshots() const { return snapshots_.size(); }

 private:
  core::GroupFamily groups_;
  core::HypothesisClass hyps_;
  std::vector<std::vector<double>> snapshots_;  // [rule][group*H + hyp]
  bool classification_;
};

struct SleepingExpertResult {
  SleepingExpertPredictor predictor;
  core::RunTrace trace;
};

// Multiplicative-weights sleeping experts over G x H, one pass over the
// shuffled sample. Experts whose group does not cover the current record
// sleep; awake weights take the exponential update and are rescaled so the
// awake mass is preserved. The returned predictor mixes
// config.expert_samples weight snapshots drawn uniformly over steps.
SleepingExpertResult sleeping_expert(const core::Dataset& d,
                                     const core::GroupFamily& groups,
                                     const core::HypothesisClass& hyps,
                                     const core::BoundedLoss& loss,
                                     const LearnerConfig& config);

}  // namespace multigroup::learners
