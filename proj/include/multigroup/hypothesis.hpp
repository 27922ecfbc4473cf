#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace multigroup::core {

using PredictorFn = std::function<double(std::span<const double>)>;

// One predictor from a finite, ordered class. `value` is set for constant
// predictors, the only kind the file formats serialize.
struct Hypothesis {
  int id = -1;
  PredictorFn predict;
  std::optional<double> value;

  static Hypothesis constant(int id, double v);
};

struct HypothesisClass {
  std::vector<Hypothesis> hyps;

  static HypothesisClass constants(std::span<const double> values);
  // Inclusive grid lo, lo+step, ..., hi (last point clamped to hi).
  static HypothesisClass constant_grid(double lo, double hi, double step);

  std::size_t size() const { return hyps.size(); }
  void validate() const;  // non-empty, ids 0..k-1 in order
};

}  // namespace multigroup::core
