#include "multigroup/dp/sparse.hpp"

#include <cmath>
#include <stdexcept>

namespace multigroup::dp {

double SparseConfig::noise_scale() const {
  if (!(delta_sensitivity > 0.0) || !(epsilon > 0.0) || !(delta > 0.0) ||
      delta >= 1.0) {
    throw std::invalid_argument("sparse config out of domain");
  }
  return delta_sensitivity * std::sqrt(32.0 * std::log(1.0 / delta)) / epsilon;
}

SparseState sparse_init(double lambda, LaplaceSampler& sampler) {
  SparseState s;
  s.threshold_noise = sampler.sample();
  s.noisy_threshold = lambda + s.threshold_noise;
  return s;
}

bool sparse_step(SparseState& state, double lambda, const StoppingRule& rule,
                 double query_value, LaplaceSampler& sampler) {
  if (state.halted) throw std::logic_error("halted");

  const double mu = sampler.sample_at(2.0 * sampler.scale());
  const double xi = state.threshold_noise;
  const bool top = query_value + mu >= state.noisy_threshold;

  ++state.total_queries;
  if (top) {
    ++state.count;
    state.since_last_update = 0;
    // Fresh threshold after every crossing.
    state.threshold_noise = sampler.sample();
    state.noisy_threshold = lambda + state.threshold_noise;
  } else {
    ++state.since_last_update;
  }
  state.transcript.push_back({top, mu, xi});

  if (rule && rule(state.count, state.since_last_update, state.total_queries)) {
    state.halted = true;
  }
  return top;
}

bool sparse_step(SparseState& state, const SparseConfig& config,
                 double query_value, LaplaceSampler& sampler) {
  return sparse_step(state, config.lambda, config.stopping_rule, query_value,
                     sampler);
}

}  // namespace multigroup::dp
