#pragma once

#include <span>
#include <utility>
#include <vector>

#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/loss.hpp"

namespace multigroup::dp {

// One candidate replacement record for neighbor enumeration.
struct Record {
  std::vector<double> x;
  double y = 0.0;
};

// Brute-force sensitivity of the weighted gap query
// P_n(g)(L_n(f|g) - L_n(h|g)): the max change over every single-record
// replacement drawn from the value universe. Exhaustive; meant for small n
// only. The theoretical ceiling is 4/n.
double query_sensitivity_oracle(const core::Dataset& d,
                                const core::PredictorFn& f,
                                const core::PredictorFn& h,
                                const core::BoundedLoss& loss,
                                const core::Group& g,
                                std::span<const Record> value_universe);

}  // namespace multigroup::dp
