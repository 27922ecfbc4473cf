#pragma once

#include "multigroup/bitmask.hpp"
#include "multigroup/chain.hpp"
#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/loss.hpp"

namespace multigroup::core {

// Empirical risk minimizer over the class, restricted to `mask` when given
// (nullptr means the full sample). Ties break to the lowest hypothesis id.
// Throws std::invalid_argument("empty group") on an empty mask.
const Hypothesis& erm(const Dataset& d, const HypothesisClass& hc,
                      const BoundedLoss& loss, const Bitmask* mask = nullptr);

// Average loss of f over the group's member records.
// Throws std::invalid_argument("empty group") when no record is covered.
// With the all-ones group this is the unconditional empirical loss L_n.
double conditional_loss(const Dataset& d, const PredictorFn& f,
                        const BoundedLoss& loss, const Group& g);
double conditional_loss(const Dataset& d, const PredictorFn& f,
                        const BoundedLoss& loss, const Bitmask& mask);

// P_n(g) * (L_n(f|g) - L_n(h|g)), computed as a difference of masked loss
// sums over n so it matches the learners' acceptance statistic bit for bit.
// Returns 0 for an empty group.
double weighted_gap(const Dataset& d, const PredictorFn& f,
                    const PredictorFn& h, const BoundedLoss& loss,
                    const Group& g);
double weighted_gap(const Dataset& d, const PredictorFn& f,
                    const PredictorFn& h, const BoundedLoss& loss,
                    const Bitmask& mask);

}  // namespace multigroup::core
