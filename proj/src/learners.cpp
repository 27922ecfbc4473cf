#include "multigroup/learners/learners.hpp"

#include <cmath>
#include <numeric>

#include "multigroup/dp/laplace.hpp"
#include "multigroup/dp/sparse.hpp"
#include "multigroup/kernels.hpp"

namespace multigroup::learners {

Method method_from_name(const std::string& name) {
  if (name == "prepend") return Method::Prepend;
  if (name == "group_prepend") return Method::GroupPrepend;
  if (name == "shaky_prepend" || name == "shaky") return Method::ShakyPrepend;
  if (name == "fractional_prepend") return Method::FractionalPrepend;
  if (name == "fractional_group_prepend")
    return Method::FractionalGroupPrepend;
  if (name == "fractional_shaky_prepend" || name == "fractional_shaky")
    return Method::FractionalShakyPrepend;
  if (name == "sleeping_expert") return Method::SleepingExpert;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Prepend:
      return "prepend";
    case Method::GroupPrepend:
      return "group_prepend";
    case Method::ShakyPrepend:
      return "shaky_prepend";
    case Method::FractionalPrepend:
      return "fractional_prepend";
    case Method::FractionalGroupPrepend:
      return "fractional_group_prepend";
    case Method::FractionalShakyPrepend:
      return "fractional_shaky_prepend";
    case Method::SleepingExpert:
      return "sleeping_expert";
  }
  return "?";
}

bool is_fractional(Method m) {
  return m == Method::FractionalPrepend ||
         m == Method::FractionalGroupPrepend ||
         m == Method::FractionalShakyPrepend;
}

namespace {

struct Traits {
  Method method;
  bool weighted = false;
  bool noisy = false;
  bool fractional = false;
};

Traits traits_of(Method m) {
  switch (m) {
    case Method::Prepend:
      return {m, false, false, false};
    case Method::GroupPrepend:
      return {m, true, false, false};
    case Method::ShakyPrepend:
      return {m, true, true, false};
    case Method::FractionalPrepend:
      return {m, false, false, true};
    case Method::FractionalGroupPrepend:
      return {m, true, false, true};
    case Method::FractionalShakyPrepend:
      return {m, true, true, true};
    case Method::SleepingExpert:
      break;
  }
  throw std::invalid_argument("not a chain learner");
}

struct EngineOutput {
  FitResult fit;
  dp::Transcript transcript;
  bool capped = false;  // update cap reached before natural termination
};

double vector_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Shared loop behind every chain learner. The pair scan is data-parallel;
// the noisy first-crossing pass stays sequential so the noise stream
// follows enumeration order exactly.
EngineOutput run_engine(const core::Dataset& d,
                        const core::GroupFamily& groups,
                        const core::HypothesisClass& hyps,
                        const core::BoundedLoss& loss,
                        const LearnerConfig& config, Traits traits,
                        bool halt_on_cap) {
  groups.validate();
  hyps.validate();
  if (!(config.lambda > 0.0)) {
    throw std::invalid_argument("lambda must be positive");
  }

  const std::size_t n = d.size();
  const double eta = traits.fractional ? config.eta : 1.0;
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("eta must be in (0, 1]");
  }

  double sigma = config.sigma;
  if (traits.method == Method::FractionalShakyPrepend && config.epsilon > 0.0 &&
      config.delta > 0.0) {
    // Weighted-gap queries are 4/n-sensitive, so the mechanism's noise
    // scale comes out of the sparse formula with Delta = 4/n.
    dp::SparseConfig sc;
    sc.delta_sensitivity = 4.0 / static_cast<double>(n);
    sc.lambda = config.lambda;
    sc.epsilon = config.epsilon;
    sc.delta = config.delta;
    sigma = sc.noise_scale();
  }
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");

  const core::GroupIndex gi = core::GroupIndex::build(groups, d);
  const kernels::PairList pairs = kernels::enumerate_pairs(gi, hyps.size());
  const std::size_t num_hyps = hyps.size();

  // Hypothesis predictions and losses are fixed for the whole run.
  std::vector<std::vector<double>> hyp_values(num_hyps);
  std::vector<std::vector<double>> hyp_losses(num_hyps);
  for (std::size_t h = 0; h < num_hyps; ++h) {
    hyp_values[h] = kernels::predict_all(d, hyps.hyps[h].predict);
    hyp_losses[h] = kernels::losses_of_values(d, hyp_values[h], loss);
  }

  // Per-(g,h) loss sums for the base variants; the fractional statistic
  // depends on the current predictor and is recomputed each sweep.
  std::vector<double> hyp_group_sums;
  if (!traits.fractional) {
    hyp_group_sums.assign(gi.size() * num_hyps, 0.0);
    const auto k = static_cast<std::ptrdiff_t>(gi.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t g = 0; g < k; ++g) {
      for (std::size_t h = 0; h < num_hyps; ++h) {
        hyp_group_sums[static_cast<std::size_t>(g) * num_hyps + h] =
            core::masked_sum(gi.masks[static_cast<std::size_t>(g)],
                             hyp_losses[h]);
      }
    }
  }

  // ERM base, ties to the lowest id.
  std::size_t base = 0;
  double base_sum = 0.0;
  for (std::size_t h = 0; h < num_hyps; ++h) {
    const double sum = std::accumulate(hyp_losses[h].begin(),
                                       hyp_losses[h].end(), 0.0);
    if (h == 0 || sum < base_sum) {
      base = h;
      base_sum = sum;
    }
  }

  std::vector<double> f_values = hyp_values[base];
  std::vector<double> f_losses = hyp_losses[base];

  EngineOutput out;
  core::UpdateChain& chain = out.fit.chain;
  core::RunTrace& trace = out.fit.trace;
  chain.base = hyps.hyps[base];
  trace.method = method_name(traits.method);
  trace.alpha = base_sum / static_cast<double>(n);
  trace.lambda = config.lambda;
  trace.sigma = traits.noisy ? sigma : 0.0;
  trace.eta = eta;
  trace.seed = config.seed;
  trace.pair_order = pairs;

  std::size_t max_updates = config.max_iters;
  if (max_updates == 0) {
    const double per_update =
        traits.weighted ? config.lambda
                        : config.lambda / static_cast<double>(n);
    const auto cap = static_cast<std::size_t>(
        std::ceil(1.0 / std::min(1.0, per_update)));
    max_updates = traits.noisy ? 10 * static_cast<std::size_t>(std::ceil(
                                          1.0 / std::min(1.0, config.lambda)))
                               : cap + 1;
  }

  dp::LaplaceSampler sampler =
      (traits.noisy && sigma > 0.0)
          ? dp::LaplaceSampler(config.seed, sigma)
          : dp::LaplaceSampler::zeroed(config.seed);
  dp::SparseState sparse;
  if (traits.noisy) sparse = dp::sparse_init(config.lambda, sampler);

  std::vector<double> stats(pairs.size());
  std::vector<double> sweep_noises;

  for (std::size_t iteration = 0;; ++iteration) {
    const double loss_before = vector_mean(f_losses);
    const std::vector<double> sumf = kernels::group_sums(gi, f_losses);

    if (traits.fractional) {
      kernels::fractional_pair_stats(d, gi, pairs, f_values, sumf, hyp_values,
                                     eta, loss, traits.weighted, stats);
    } else {
      kernels::pair_stats(pairs, sumf, hyp_group_sums, num_hyps, gi.counts, n,
                          traits.weighted, stats);
    }

    const double xi_in_effect = traits.noisy ? sparse.threshold_noise : 0.0;
    std::ptrdiff_t chosen = -1;
    double chosen_noise = 0.0;
    std::size_t examined = pairs.size();

    if (traits.noisy) {
      sweep_noises.clear();
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const bool top = dp::sparse_step(sparse, config.lambda, {}, stats[p],
                                         sampler);
        sweep_noises.push_back(sparse.transcript.back().query_noise);
        out.transcript.push_back(top);
        if (top) {
          chosen = static_cast<std::ptrdiff_t>(p);
          chosen_noise = sweep_noises.back();
          examined = p + 1;
          break;
        }
      }
    } else {
      const kernels::BestPair best = kernels::argmax_pair(stats);
      if (best.index >= 0 && best.stat >= config.lambda) chosen = best.index;
    }

    core::IterationRecord rec;
    rec.iteration = iteration;
    rec.eta = eta;
    rec.threshold_noise = xi_in_effect;
    rec.loss_before = loss_before;
    rec.pairs_examined = examined;

    if (chosen < 0) {
      // Terminal sweep: keep everything the certificates need.
      const kernels::BestPair best = kernels::argmax_pair(stats);
      rec.accepted = false;
      rec.statistic = best.index >= 0 ? best.stat : 0.0;
      rec.loss_after = loss_before;
      trace.iterations.push_back(rec);
      trace.final_statistics = stats;
      trace.final_query_noises =
          traits.noisy ? sweep_noises : std::vector<double>(pairs.size(), 0.0);
      trace.final_threshold_noise = xi_in_effect;
      trace.completed = true;
      break;
    }

    if (trace.num_updates >= max_updates) {
      out.capped = true;
      if (halt_on_cap) break;
      throw LearnerError("max_iters exceeded", std::move(chain),
                         std::move(trace));
    }

    const auto [g, h] = pairs[static_cast<std::size_t>(chosen)];
    const auto gu = static_cast<std::size_t>(g);
    const auto hu = static_cast<std::size_t>(h);
    gi.masks[gu].for_each([&](std::size_t i) {
      f_values[i] = core::blend(f_values[i], hyp_values[hu][i], eta);
      f_losses[i] = loss.eval(f_values[i], d.y(i));
    });
    chain.updates.push_back({eta, groups.groups[gu], hyps.hyps[hu]});
    ++trace.num_updates;

    rec.accepted = true;
    rec.group_id = g;
    rec.hyp_id = h;
    rec.statistic = stats[static_cast<std::size_t>(chosen)];
    rec.query_noise = chosen_noise;
    rec.loss_after = vector_mean(f_losses);
    trace.iterations.push_back(rec);
  }

  return out;
}

FitResult run_variant(Method m, const core::Dataset& d,
                      const core::GroupFamily& groups,
                      const core::HypothesisClass& hyps,
                      const core::BoundedLoss& loss,
                      const LearnerConfig& config) {
  return run_engine(d, groups, hyps, loss, config, traits_of(m), false).fit;
}

}  // namespace

FitResult prepend(const core::Dataset& d, const core::GroupFamily& groups,
                  const core::HypothesisClass& hyps,
                  const core::BoundedLoss& loss, const LearnerConfig& config) {
  return run_variant(Method::Prepend, d, groups, hyps, loss, config);
}

FitResult group_prepend(const core::Dataset& d,
                        const core::GroupFamily& groups,
                        const core::HypothesisClass& hyps,
                        const core::BoundedLoss& loss,
                        const LearnerConfig& config) {
  return run_variant(Method::GroupPrepend, d, groups, hyps, loss, config);
}

FitResult shaky_prepend(const core::Dataset& d,
                        const core::GroupFamily& groups,
                        const core::HypothesisClass& hyps,
                        const core::BoundedLoss& loss,
                        const LearnerConfig& config) {
  return run_variant(Method::ShakyPrepend, d, groups, hyps, loss, config);
}

FitResult fractional_prepend(const core::Dataset& d,
                             const core::GroupFamily& groups,
                             const core::HypothesisClass& hyps,
                             const core::BoundedLoss& loss,
                             const LearnerConfig& config) {
  return run_variant(Method::FractionalPrepend, d, groups, hyps, loss, config);
}

FitResult fractional_group_prepend(const core::Dataset& d,
                                   const core::GroupFamily& groups,
                                   const core::HypothesisClass& hyps,
                                   const core::BoundedLoss& loss,
                                   const LearnerConfig& config) {
  return run_variant(Method::FractionalGroupPrepend, d, groups, hyps, loss,
                     config);
}

FitResult fractional_shaky_prepend(const core::Dataset& d,
                                   const core::GroupFamily& groups,
                                   const core::HypothesisClass& hyps,
                                   const core::BoundedLoss& loss,
                                   const LearnerConfig& config) {
  return run_variant(Method::FractionalShakyPrepend, d, groups, hyps, loss,
                     config);
}

FitResult fit(Method method, const core::Dataset& d,
              const core::GroupFamily& groups,
              const core::HypothesisClass& hyps, const core::BoundedLoss& loss,
              const LearnerConfig& config) {
  if (method == Method::SleepingExpert) {
    throw std::invalid_argument("sleeping_expert does not produce a chain");
  }
  return run_variant(method, d, groups, hyps, loss, config);
}

dp::Transcript shaky_transcript(const core::Dataset& d,
                                const core::GroupFamily& groups,
                                const core::HypothesisClass& hyps,
                                const core::BoundedLoss& loss,
                                const LearnerConfig& config) {
  return run_engine(d, groups, hyps, loss, config,
                    traits_of(Method::ShakyPrepend), true)
      .transcript;
}

}  // namespace multigroup::learners
