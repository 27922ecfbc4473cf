#include "multigroup/kernels.hpp"

#include "multigroup/chain.hpp"

namespace multigroup::kernels {

std::vector<double> predict_all_serial(const Dataset& d, const PredictorFn& f) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = f(d.x(i));
  return out;
}

std::vector<double> predict_all(const Dataset& d, const PredictorFn& f) {
  std::vector<double> out(d.size());
  const auto n = static_cast<std::ptrdiff_t>(d.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = f(d.x(static_cast<std::size_t>(i)));
  }
  return out;
}

std::vector<double> losses_of_values_serial(const Dataset& d,
                                            std::span<const double> values,
                                            const BoundedLoss& loss) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[i] = loss.eval(values[i], d.y(i));
  }
  return out;
}

std::vector<double> losses_of_values(const Dataset& d,
                                     std::span<const double> values,
                                     const BoundedLoss& loss) {
  std::vector<double> out(d.size());
  const auto n = static_cast<std::ptrdiff_t>(d.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = loss.eval(values[k], d.y(k));
  }
  return out;
}

std::vector<double> group_sums_serial(const GroupIndex& gi,
                                      std::span<const double> values) {
  std::vector<double> out(gi.size());
  for (std::size_t g = 0; g < gi.size(); ++g) {
    out[g] = core::masked_sum(gi.masks[g], values);
  }
  return out;
}

std::vector<double> group_sums(const GroupIndex& gi,
                               std::span<const double> values) {
  std::vector<double> out(gi.size());
  const auto k = static_cast<std::ptrdiff_t>(gi.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t g = 0; g < k; ++g) {
    out[static_cast<std::size_t>(g)] =
        core::masked_sum(gi.masks[static_cast<std::size_t>(g)], values);
  }
  return out;
}

PairList enumerate_pairs(const GroupIndex& gi, std::size_t num_hyps) {
  PairList pairs;
  pairs.reserve(gi.size() * num_hyps);
  for (std::size_t g = 0; g < gi.size(); ++g) {
    if (gi.counts[g] == 0) continue;
    for (std::size_t h = 0; h < num_hyps; ++h) {
      pairs.emplace_back(static_cast<int>(g), static_cast<int>(h));
    }
  }
  return pairs;
}

void pair_stats(const PairList& pairs, std::span<const double> sumf,
                std::span<const double> hyp_group_sums, std::size_t num_hyps,
                std::span<const std::size_t> counts, std::size_t n,
                bool weighted, std::span<double> out) {
  const auto m = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < m; ++p) {
    const auto [g, h] = pairs[static_cast<std::size_t>(p)];
    const double hs =
        hyp_group_sums[static_cast<std::size_t>(g) * num_hyps +
                       static_cast<std::size_t>(h)];
    const double denom = weighted
                             ? static_cast<double>(n)
                             : static_cast<double>(counts[static_cast<std::size_t>(g)]);
    out[static_cast<std::size_t>(p)] =
        (sumf[static_cast<std::size_t>(g)] - hs) / denom;
  }
}

namespace {

// Loss sum of blend(f, h, eta) over the group's members, ascending order.
double blend_loss_sum(const Dataset& d, const Bitmask& mask,
                      std::span<const double> f_values,
                      std::span<const double> h_values, double eta,
                      const BoundedLoss& loss) {
  double sum = 0.0;
  mask.for_each([&](std::size_t i) {
    sum += loss.eval(core::blend(f_values[i], h_values[i], eta), d.y(i));
  });
  return sum;
}

void fractional_pair_stats_impl(
    const Dataset& d, const GroupIndex& gi, const PairList& pairs,
    std::span<const double> f_values, std::span<const double> f_group_loss_sums,
    const std::vector<std::vector<double>>& hyp_values, double eta,
    const BoundedLoss& loss, bool weighted, std::span<double> out,
    bool parallel) {
  const auto m = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::ptrdiff_t p = 0; p < m; ++p) {
    const auto [g, h] = pairs[static_cast<std::size_t>(p)];
    const auto gu = static_cast<std::size_t>(g);
    const double blend_sum =
        blend_loss_sum(d, gi.masks[gu], f_values,
                       hyp_values[static_cast<std::size_t>(h)], eta, loss);
    const double denom = weighted ? static_cast<double>(d.size())
                                  : static_cast<double>(gi.counts[gu]);
    out[static_cast<std::size_t>(p)] =
        (f_group_loss_sums[gu] - blend_sum) / denom;
  }
}

}  // namespace

void fractional_pair_stats(const Dataset& d, const GroupIndex& gi,
                           const PairList& pairs,
                           std::span<const double> f_values,
                           std::span<const double> f_group_loss_sums,
                           const std::vector<std::vector<double>>& hyp_values,
                           double eta, const BoundedLoss& loss, bool weighted,
                           std::span<double> out) {
  fractional_pair_stats_impl(d, gi, pairs, f_values, f_group_loss_sums,
                             hyp_values, eta, loss, weighted, out, true);
}

void fractional_pair_stats_serial(
    const Dataset& d, const GroupIndex& gi, const PairList& pairs,
    std::span<const double> f_values, std::span<const double> f_group_loss_sums,
    const std::vector<std::vector<double>>& hyp_values, double eta,
    const BoundedLoss& loss, bool weighted, std::span<double> out) {
  fractional_pair_stats_impl(d, gi, pairs, f_values, f_group_loss_sums,
                             hyp_values, eta, loss, weighted, out, false);
}

BestPair argmax_pair_serial(std::span<const double> stats) {
  BestPair best;
  for (std::size_t p = 0; p < stats.size(); ++p) {
    if (best.index < 0 || stats[p] > best.stat) {
      best.index = static_cast<std::ptrdiff_t>(p);
      best.stat = stats[p];
    }
  }
  return best;
}

BestPair argmax_pair(std::span<const double> stats) {
  BestPair best;
#pragma omp parallel
  {
    BestPair local;
    const auto m = static_cast<std::ptrdiff_t>(stats.size());
#pragma omp for nowait schedule(static)
    for (std::ptrdiff_t p = 0; p < m; ++p) {
      const double s = stats[static_cast<std::size_t>(p)];
      if (local.index < 0 || s > local.stat) {
        local.index = p;
        local.stat = s;
      }
    }
#pragma omp critical
    {
      // Exact comparisons: ties resolve to the lowest index regardless of
      // how threads partitioned the buffer.
      if (local.index >= 0 &&
          (best.index < 0 || local.stat > best.stat ||
           (local.stat == best.stat && local.index < best.index))) {
        best = local;
      }
    }
  }
  return best;
}

}  // namespace multigroup::kernels
