#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "multigroup/bitmask.hpp"
#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/loss.hpp"

// Data-parallel inner loops of the learners, each with a serial reference
// implementation. The parallel versions partition work across independent
// records, groups, or pairs and never change any per-element computation,
// so results are bit-identical to the serial ones at any thread count.
namespace multigroup::kernels {

using core::Bitmask;
using core::BoundedLoss;
using core::Dataset;
using core::GroupIndex;
using core::PredictorFn;

// ---- per-record kernels -------------------------------------------------

std::vector<double> predict_all(const Dataset& d, const PredictorFn& f);
std::vector<double> predict_all_serial(const Dataset& d, const PredictorFn& f);

std::vector<double> losses_of_values(const Dataset& d,
                                     std::span<const double> values,
                                     const BoundedLoss& loss);
std::vector<double> losses_of_values_serial(const Dataset& d,
                                            std::span<const double> values,
                                            const BoundedLoss& loss);

// ---- per-group kernels ---------------------------------------------------

// sums[g] = sum of values[i] over members of group g.
std::vector<double> group_sums(const GroupIndex& gi,
                               std::span<const double> values);
std::vector<double> group_sums_serial(const GroupIndex& gi,
                                      std::span<const double> values);

// ---- per-pair kernels ----------------------------------------------------

using PairList = std::vector<std::pair<int, int>>;  // (group id, hyp id)

// Enumeration order over non-empty groups: group id major, hypothesis id
// minor. Empty groups are skipped entirely (their conditional loss is
// undefined and a positive threshold can never be crossed by a zero gap).
PairList enumerate_pairs(const GroupIndex& gi, std::size_t num_hyps);

// Acceptance statistic of the base variants for every pair:
//   weighted:   (sumf[g] - hyp_group_sums[g][h]) / n
//   unweighted: (sumf[g] - hyp_group_sums[g][h]) / count[g]
void pair_stats(const PairList& pairs, std::span<const double> sumf,
                std::span<const double> hyp_group_sums, std::size_t num_hyps,
                std::span<const std::size_t> counts, std::size_t n,
                bool weighted, std::span<double> out);

// Acceptance statistic of the fractional variants: the candidate f' blends
// f toward h with step eta on the group's members, and the statistic is the
// (optionally weighted) gap between f and f' on that group.
void fractional_pair_stats(const Dataset& d, const GroupIndex& gi,
                           const PairList& pairs,
                           std::span<const double> f_values,
                           std::span<const double> f_group_loss_sums,
                           const std::vector<std::vector<double>>& hyp_values,
                           double eta, const BoundedLoss& loss, bool weighted,
                           std::span<double> out);
void fractional_pair_stats_serial(
    const Dataset& d, const GroupIndex& gi, const PairList& pairs,
    std::span<const double> f_values, std::span<const double> f_group_loss_sums,
    const std::vector<std::vector<double>>& hyp_values, double eta,
    const BoundedLoss& loss, bool weighted, std::span<double> out);

// Argmax over a statistic buffer; ties break to the lowest pair index
// (i.e. lowest group id, then lowest hypothesis id).
struct BestPair {
  std::ptrdiff_t index = -1;
  double stat = 0.0;
};
BestPair argmax_pair(std::span<const double> stats);
BestPair argmax_pair_serial(std::span<const double> stats);

}  // namespace multigroup::kernels
