#include "multigroup/group.hpp"

#include <stdexcept>

namespace multigroup::core {

Group Group::interval_group(int id, double lo, double hi) {
  Group g;
  g.id = id;
  g.interval = Interval{lo, hi};
  g.indicator = [lo, hi](std::span<const double> x) {
    return x[0] >= lo && x[0] <= hi;
  };
  return g;
}

Group Group::all(int id) {
  Group g;
  g.id = id;
  g.indicator = [](std::span<const double>) { return true; };
  return g;
}

Group Group::predicate(int id, IndicatorFn fn) {
  Group g;
  g.id = id;
  g.indicator = std::move(fn);
  return g;
}

Bitmask Group::mask(const Dataset& d) const {
  Bitmask m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (indicator(d.x(i))) m.set(i);
  }
  return m;
}

void GroupFamily::validate() const {
  if (groups.empty()) throw std::invalid_argument("empty group family");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].id != static_cast<int>(i)) {
      throw std::invalid_argument("group ids must be 0..k-1 in order");
    }
  }
}

GroupIndex GroupIndex::build(const GroupFamily& family, const Dataset& d) {
  family.validate();
  GroupIndex gi;
  gi.masks.reserve(family.size());
  gi.counts.reserve(family.size());
  for (const auto& g : family.groups) {
    gi.masks.push_back(g.mask(d));
    gi.counts.push_back(gi.masks.back().count());
  }
  return gi;
}

}  // namespace multigroup::core
