#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "multigroup/bitmask.hpp"
#include "multigroup/dataset.hpp"

namespace multigroup::core {

using IndicatorFn = std::function<bool(std::span<const double>)>;

// Closed interval on the first feature.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// {0,1}-valued region of the feature space. `interval` is set when the
// group is an interval on x[0]; that is the only kind the file formats
// serialize.
struct Group {
  int id = -1;
  IndicatorFn indicator;
  std::optional<Interval> interval;

  static Group interval_group(int id, double lo, double hi);
  static Group all(int id);                 // whole domain
  static Group predicate(int id, IndicatorFn fn);

  // Membership mask for a dataset, recomputed from the indicator.
  Bitmask mask(const Dataset& d) const;
};

struct GroupFamily {
  std::vector<Group> groups;

  std::size_t size() const { return groups.size(); }
  void validate() const;  // non-empty, ids 0..k-1 in order
};

// Masks materialized once per (family, dataset) pair. Learners enumerate
// all of G x H every round, so everything downstream works off this index
// rather than re-evaluating indicators.
struct GroupIndex {
  std::vector<Bitmask> masks;
  std::vector<std::size_t> counts;

  static GroupIndex build(const GroupFamily& family, const Dataset& d);
  std::size_t size() const { return masks.size(); }
};

}  // namespace multigroup::core
