#pragma once

#include <span>
#include <vector>

#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"

namespace multigroup::core {

// Partial step from f toward h. eta == 1 must reproduce h bit for bit:
// the decision-list reading of an all-ones chain depends on it, and so does
// the exact equivalence between the fractional learners at eta = 1 and
// their base variants.
inline double blend(double f, double h, double eta) {
  return eta == 1.0 ? h : f + eta * (h - f);
}

struct ChainUpdate {
  double eta = 1.0;
  Group group;
  Hypothesis hyp;
};

// Learned predictor: a base hypothesis (conceptually paired with the
// all-ones group) plus an ordered sequence of corrective updates.
//
//   f_0(x) = base(x)
//   f_{t+1}(x) = f_t(x) + eta_t * g_t(x) * (h_t(x) - f_t(x))
//
// With all eta = 1 this is the decision list [g_T, h_T, ..., g_0, h_0]:
// the most recently appended pair covering x decides the prediction.
struct UpdateChain {
  Hypothesis base;
  std::vector<ChainUpdate> updates;

  double evaluate(std::span<const double> x) const;
  PredictorFn as_predictor() const;
};

double evaluate_chain(const UpdateChain& chain, std::span<const double> x);

}  // namespace multigroup::core
