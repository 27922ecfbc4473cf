#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multigroup/dataset.hpp"
#include "multigroup/group.hpp"
#include "multigroup/hypothesis.hpp"
#include "multigroup/learners/config.hpp"
#include "multigroup/loss.hpp"
#include "multigroup/trace.hpp"

namespace multigroup::experiments {

enum class Criterion { TotalLoss, WorstGroupLoss };

Criterion criterion_from_name(const std::string& name);
std::string criterion_name(Criterion c);

// One grid candidate; fields irrelevant to a method keep their defaults.
struct HyperPoint {
  double lambda = 0.05;
  double sigma = 0.0;
  double eta = 1.0;
  double learning_rate = 4.0;
};

using HyperGrid = std::vector<HyperPoint>;

// Cartesian product, lambda-major (then sigma, eta, learning rate); grid
// index order is the tie-break order.
HyperGrid make_grid(const std::vector<double>& lambdas,
                    const std::vector<double>& sigmas = {0.0},
                    const std::vector<double>& etas = {1.0},
                    const std::vector<double>& rates = {4.0});

// total and worst-group loss of a predictor on a dataset; worst-group only
// over groups with at least one member, which are reported `undefined`
// otherwise.
struct Evaluation {
  double total = 0.0;
  double worst = 0.0;
  int worst_group = -1;
  std::size_t undefined_groups = 0;
};

Evaluation evaluate_predictor(const core::Dataset& d,
                              const core::GroupIndex& gi,
                              const core::PredictorFn& f,
                              const core::BoundedLoss& loss);

struct TuneRow {
  HyperPoint point;
  double val_total = 0.0;
  double val_worst = 0.0;
};

struct TuneOutcome {
  std::size_t best_index = 0;
  HyperPoint best;
  std::vector<TuneRow> table;
  core::PredictorFn predictor;  // fitted on train at the best point
  std::size_t num_updates = 0;  // 0 for the sleeping expert
  core::RunTrace trace;
};

// Fits every grid point on train, scores on val under the criterion, and
// returns the argmin (ties to the lowest grid index) refit at the winner.
// Throws when the grid or val is empty, or when no group has a member in
// val under the worst-group criterion.
TuneOutcome tune(const core::Dataset& train, const core::Dataset& val,
                 learners::Method method, const HyperGrid& grid,
                 Criterion criterion, const core::BoundedLoss& loss,
                 std::uint64_t seed, const core::GroupFamily& groups,
                 const core::HypothesisClass& hyps);

}  // namespace multigroup::experiments
