#include "multigroup/ops.hpp"

#include <stdexcept>

namespace multigroup::core {

const Hypothesis& erm(const Dataset& d, const HypothesisClass& hc,
                      const BoundedLoss& loss, const Bitmask* mask) {
  hc.validate();
  if (mask && !mask->any()) throw std::invalid_argument("empty group");

  std::size_t best = 0;
  double best_sum = 0.0;
  for (std::size_t h = 0; h < hc.size(); ++h) {
    double sum = 0.0;
    if (mask) {
      mask->for_each([&](std::size_t i) {
        sum += loss.eval(hc.hyps[h].predict(d.x(i)), d.y(i));
      });
    } else {
      for (std::size_t i = 0; i < d.size(); ++i) {
        sum += loss.eval(hc.hyps[h].predict(d.x(i)), d.y(i));
      }
    }
    if (h == 0 || sum < best_sum) {  // strict: ties keep the lowest id
      best = h;
      best_sum = sum;
    }
  }
  return hc.hyps[best];
}

double conditional_loss(const Dataset& d, const PredictorFn& f,
                        const BoundedLoss& loss, const Bitmask& mask) {
  const std::size_t count = mask.count();
  if (count == 0) throw std::invalid_argument("empty group");
  double sum = 0.0;
  mask.for_each([&](std::size_t i) { sum += loss.eval(f(d.x(i)), d.y(i)); });
  return sum / static_cast<double>(count);
}

double conditional_loss(const Dataset& d, const PredictorFn& f,
                        const BoundedLoss& loss, const Group& g) {
  return conditional_loss(d, f, loss, g.mask(d));
}

double weighted_gap(const Dataset& d, const PredictorFn& f,
                    const PredictorFn& h, const BoundedLoss& loss,
                    const Bitmask& mask) {
  if (!mask.any()) return 0.0;
  double sum_f = 0.0;
  double sum_h = 0.0;
  mask.for_each([&](std::size_t i) {
    sum_f += loss.eval(f(d.x(i)), d.y(i));
    sum_h += loss.eval(h(d.x(i)), d.y(i));
  });
  // P_n(g) * (L_n(f|g) - L_n(h|g)) == (sum_f - sum_h) / n; the sum form is
  // the one the learners compare against the threshold.
  return (sum_f - sum_h) / static_cast<double>(d.size());
}

double weighted_gap(const Dataset& d, const PredictorFn& f,
                    const PredictorFn& h, const BoundedLoss& loss,
                    const Group& g) {
  return weighted_gap(d, f, h, loss, g.mask(d));
}

}  // namespace multigroup::core
