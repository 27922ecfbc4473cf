#include "multigroup/hypothesis.hpp"

#include <cmath>
#include <stdexcept>

namespace multigroup::core {

Hypothesis Hypothesis::constant(int id, double v) {
  Hypothesis h;
  h.id = id;
  h.value = v;
  h.predict = [v](std::span<const double>) { return v; };
  return h;
}

HypothesisClass HypothesisClass::constants(std::span<const double> values) {
  HypothesisClass hc;
  hc.hyps.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    hc.hyps.push_back(Hypothesis::constant(static_cast<int>(i), values[i]));
  }
  hc.validate();
  return hc;
}

HypothesisClass HypothesisClass::constant_grid(double lo, double hi,
                                               double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("bad constant grid");
  }
  std::vector<double> values;
  const auto k = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= k; ++i) values.push_back(lo + step * i);
  if (values.back() < hi - 1e-12) values.push_back(hi);
  return constants(values);
}

void HypothesisClass::validate() const {
  if (hyps.empty()) throw std::invalid_argument("empty hypothesis class");
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (hyps[i].id != static_cast<int>(i)) {
      throw std::invalid_argument("hypothesis ids must be 0..k-1 in order");
    }
  }
}

}  // namespace multigroup::core
