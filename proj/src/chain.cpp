#include "multigroup/chain.hpp"

namespace multigroup::core {

double UpdateChain::evaluate(std::span<const double> x) const {
  double f = base.predict(x);
  for (const auto& u : updates) {
    // Off-group records are untouched; branching (rather than multiplying
    // by g(x)) keeps f bit-identical to the incremental updates the
    // learners maintain.
    if (u.group.indicator(x)) f = blend(f, u.hyp.predict(x), u.eta);
  }
  return f;
}

PredictorFn UpdateChain::as_predictor() const {
  // Copy; the chain is a value type and the predictor must stay valid on
  // its own.
  UpdateChain self = *this;
  return [self](std::span<const double> x) { return self.evaluate(x); };
}

double evaluate_chain(const UpdateChain& chain, std::span<const double> x) {
  return chain.evaluate(x);
}

}  // namespace multigroup::core
