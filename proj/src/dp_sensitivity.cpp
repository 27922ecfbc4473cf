#include "multigroup/dp/sensitivity.hpp"

#include <cmath>

#include "multigroup/ops.hpp"

namespace multigroup::dp {

double query_sensitivity_oracle(const core::Dataset& d,
                                const core::PredictorFn& f,
                                const core::PredictorFn& h,
                                const core::BoundedLoss& loss,
                                const core::Group& g,
                                std::span<const Record> value_universe) {
  const double base = core::weighted_gap(d, f, h, loss, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (const auto& r : value_universe) {
      const core::Dataset neighbor = d.with_record(i, r.x, r.y);
      const double alt = core::weighted_gap(neighbor, f, h, loss, g);
      worst = std::max(worst, std::abs(base - alt));
    }
  }
  return worst;
}

}  // namespace multigroup::dp
