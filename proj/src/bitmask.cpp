#include "multigroup/bitmask.hpp"

namespace multigroup::core {

double masked_sum(const Bitmask& mask, std::span<const double> values) {
  double sum = 0.0;
  mask.for_each([&](std::size_t i) { sum += values[i]; });
  return sum;
}

}  // namespace multigroup::core
