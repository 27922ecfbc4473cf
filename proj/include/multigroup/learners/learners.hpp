#pragma once

#include <stdexcept>

#include "multigroup/chain.hpp"
#include "multigroup/dataset.hpp"
#include "multigroup/dp/audit.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/learners/config.hpp"
#include "multigroup/loss.hpp"
#include "multigroup/trace.hpp"

namespace multigroup::learners {

struct FitResult {
  core::UpdateChain chain;
  core::RunTrace trace;
};

// Raised when a run exceeds its update cap; carries whatever was built.
class LearnerError : public std::runtime_error {
 public:
  LearnerError(const std::string& what, core::UpdateChain chain,
               core::RunTrace trace)
      : std::runtime_error(what),
        partial_chain(std::move(chain)),
        partial_trace(std::move(trace)) {}

  core::UpdateChain partial_chain;
  core::RunTrace partial_trace;
};

// Deterministic argmax learners. Each round scans all of G x H, takes the
// pair with the largest acceptance statistic (ties: lowest group id, then
// lowest hypothesis id) and prepends it while the statistic clears lambda.
//
//   prepend:        L_n(f|g) - L_n(h|g)             (unweighted)
//   group_prepend:  P_n(g) (L_n(f|g) - L_n(h|g))    (weighted)
FitResult prepend(const core::Dataset& d, const core::GroupFamily& groups,
                  const core::HypothesisClass& hyps,
                  const core::BoundedLoss& loss, const LearnerConfig& config);
FitResult group_prepend(const core::Dataset& d,
                        const core::GroupFamily& groups,
                        const core::HypothesisClass& hyps,
                        const core::BoundedLoss& loss,
                        const LearnerConfig& config);

// Noisy first-crossing learner. Pairs are examined in enumeration order;
// each examined pair draws fresh Lap(2*sigma) noise and the first noisy
// crossing of the noisy threshold is prepended, after which the threshold
// is resampled. A full sweep with no crossing terminates the run. The scan
// is sequential by contract: the noise stream must follow enumeration
// order.
FitResult shaky_prepend(const core::Dataset& d,
                        const core::GroupFamily& groups,
                        const core::HypothesisClass& hyps,
                        const core::BoundedLoss& loss,
                        const LearnerConfig& config);

// Fractional variants: identical control flow with the acceptance statistic
// measured against f' = f + eta*g*(h - f) instead of h, and updates
// appended with step size eta. At eta = 1 they reproduce their base
// variants bit for bit (chains, traces and noise streams).
FitResult fractional_prepend(const core::Dataset& d,
                             const core::GroupFamily& groups,
                             const core::HypothesisClass& hyps,
                             const core::BoundedLoss& loss,
                             const LearnerConfig& config);
FitResult fractional_group_prepend(const core::Dataset& d,
                                   const core::GroupFamily& groups,
                                   const core::HypothesisClass& hyps,
                                   const core::BoundedLoss& loss,
                                   const LearnerConfig& config);
FitResult fractional_shaky_prepend(const core::Dataset& d,
                                   const core::GroupFamily& groups,
                                   const core::HypothesisClass& hyps,
                                   const core::BoundedLoss& loss,
                                   const LearnerConfig& config);

// Dispatcher over the chain-producing methods (everything but the sleeping
// expert).
FitResult fit(Method method, const core::Dataset& d,
              const core::GroupFamily& groups,
              const core::HypothesisClass& hyps, const core::BoundedLoss& loss,
              const LearnerConfig& config);

// Mechanism view of shaky prepend for privacy audits: same loop, same noise
// stream, but the answer sequence is returned instead of a predictor and
// hitting the update cap is an ordinary halt rather than an error.
dp::Transcript shaky_transcript(const core::Dataset& d,
                                const core::GroupFamily& groups,
                                const core::HypothesisClass& hyps,
                                const core::BoundedLoss& loss,
                                const LearnerConfig& config);

}  // namespace multigroup::learners
