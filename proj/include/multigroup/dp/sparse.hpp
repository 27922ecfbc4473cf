#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "multigroup/dp/laplace.hpp"

namespace multigroup::dp {

// Stopping rule over (update count, queries since the last update, total
// queries). Checked after every answered query.
using StoppingRule =
    std::function<bool(std::size_t count, std::size_t since_last_update,
                       std::size_t total_queries)>;

// Above-threshold mechanism answering a stream of Delta-sensitive queries.
// The threshold gets fresh Lap(sigma) noise after every crossing and each
// query gets fresh Lap(2*sigma) noise; privacy is paid per crossing, not
// per query.
struct SparseConfig {
  double delta_sensitivity = 1.0;  // Delta
  double lambda = 0.0;             // threshold
  double epsilon = 0.0;
  double delta = 0.0;
  StoppingRule stopping_rule;  // empty: never stops on its own

  // sigma = Delta * sqrt(32 ln(1/delta)) / epsilon
  double noise_scale() const;
};

struct SparseStepRecord {
  bool top = false;           // threshold crossed
  double query_noise = 0.0;   // mu
  double threshold_noise = 0.0;  // xi in effect when answering
};

struct SparseState {
  std::size_t count = 0;              // number of crossings so far
  double noisy_threshold = 0.0;       // lambda-hat_count
  double threshold_noise = 0.0;       // xi_count
  std::size_t since_last_update = 0;  // queries since the last crossing
  std::size_t total_queries = 0;
  bool halted = false;
  std::vector<SparseStepRecord> transcript;
};

// Samples lambda-hat_0; consumes exactly one draw from the sampler. The
// sampler's scale is the mechanism's sigma (build it from
// SparseConfig::noise_scale(), or directly when sigma is given).
SparseState sparse_init(double lambda, LaplaceSampler& sampler);

// Answers one query: draws mu ~ Lap(2*sigma); crossing means
// query_value + mu >= lambda-hat. On a crossing the count advances and the
// threshold is resampled with fresh Lap(sigma) noise. The stopping rule is
// applied afterward. Throws std::logic_error("halted") when stepping a
// halted mechanism.
bool sparse_step(SparseState& state, double lambda, const StoppingRule& rule,
                 double query_value, LaplaceSampler& sampler);
bool sparse_step(SparseState& state, const SparseConfig& config,
                 double query_value, LaplaceSampler& sampler);

}  // namespace multigroup::dp
