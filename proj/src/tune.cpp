#include "multigroup/experiments/tune.hpp"

#include <stdexcept>

#include "multigroup/kernels.hpp"
#include "multigroup/learners/learners.hpp"
#include "multigroup/learners/sleeping.hpp"

namespace multigroup::experiments {

Criterion criterion_from_name(const std::string& name) {
  if (name == "total_loss") return Criterion::TotalLoss;
  if (name == "worst_group_loss") return Criterion::WorstGroupLoss;
  throw std::invalid_argument("unknown criterion: " + name);
}

std::string criterion_name(Criterion c) {
  return c == Criterion::TotalLoss ? "total_loss" : "worst_group_loss";
}

HyperGrid make_grid(const std::vector<double>& lambdas,
                    const std::vector<double>& sigmas,
                    const std::vector<double>& etas,
                    const std::vector<double>& rates) {
  HyperGrid grid;
  for (double l : lambdas) {
    for (double s : sigmas) {
      for (double e : etas) {
        for (double r : rates) {
          HyperPoint p;
          p.lambda = l;
          p.sigma = s;
          p.eta = e;
          p.learning_rate = r;
          grid.push_back(p);
        }
      }
    }
  }
  return grid;
}

Evaluation evaluate_predictor(const core::Dataset& d,
                              const core::GroupIndex& gi,
                              const core::PredictorFn& f,
                              const core::BoundedLoss& loss) {
  const std::vector<double> values = kernels::predict_all(d, f);
  const std::vector<double> losses = kernels::losses_of_values(d, values, loss);

  Evaluation ev;
  double sum = 0.0;
  for (double v : losses) sum += v;
  ev.total = sum / static_cast<double>(d.size());

  const std::vector<double> sums = kernels::group_sums(gi, losses);
  bool have = false;
  for (std::size_t g = 0; g < gi.size(); ++g) {
    if (gi.counts[g] == 0) {
      ++ev.undefined_groups;
      continue;
    }
    const double cl = sums[g] / static_cast<double>(gi.counts[g]);
    if (!have || cl > ev.worst) {
      ev.worst = cl;
      ev.worst_group = static_cast<int>(g);
      have = true;
    }
  }
  return ev;
}

namespace {

struct FittedPoint {
  core::PredictorFn predictor;
  std::size_t num_updates = 0;
  core::RunTrace trace;
};

FittedPoint fit_point(const core::Dataset& train, learners::Method method,
                      const HyperPoint& p, std::uint64_t seed,
                      const core::GroupFamily& groups,
                      const core::HypothesisClass& hyps,
                      const core::BoundedLoss& loss) {
  learners::LearnerConfig cfg;
  cfg.lambda = p.lambda;
  cfg.sigma = p.sigma;
  cfg.eta = p.eta;
  cfg.learning_rate = p.learning_rate;
  cfg.seed = seed;
  if (method == learners::Method::SleepingExpert) {
    auto res = learners::sleeping_expert(train, groups, hyps, loss, cfg);
    return {res.predictor.as_predictor(), 0, std::move(res.trace)};
  }
  auto res = learners::fit(method, train, groups, hyps, loss, cfg);
  return {res.chain.as_predictor(), res.trace.num_updates,
          std::move(res.trace)};
}

}  // namespace

TuneOutcome tune(const core::Dataset& train, const core::Dataset& val,
                 learners::Method method, const HyperGrid& grid,
                 Criterion criterion, const core::BoundedLoss& loss,
                 std::uint64_t seed, const core::GroupFamily& groups,
                 const core::HypothesisClass& hyps) {
  if (grid.empty()) throw std::invalid_argument("empty hyperparameter grid");
  if (val.size() == 0) throw std::invalid_argument("empty validation set");

  const core::GroupIndex gi_val = core::GroupIndex::build(groups, val);
  if (criterion == Criterion::WorstGroupLoss) {
    bool any = false;
    for (std::size_t c : gi_val.counts) any = any || c > 0;
    if (!any) {
      throw std::invalid_argument(
          "all groups empty in validation set under worst_group_loss");
    }
  }

  TuneOutcome out;
  out.table.reserve(grid.size());
  double best_score = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FittedPoint fp =
        fit_point(train, method, grid[i], seed, groups, hyps, loss);
    const Evaluation ev = evaluate_predictor(val, gi_val, fp.predictor, loss);
    out.table.push_back({grid[i], ev.total, ev.worst});
    const double score =
        criterion == Criterion::TotalLoss ? ev.total : ev.worst;
    if (i == 0 || score < best_score) {  // strict: ties keep the lowest index
      best_score = score;
      out.best_index = i;
    }
  }
  out.best = grid[out.best_index];

  FittedPoint fp =
      fit_point(train, method, out.best, seed, groups, hyps, loss);
  out.predictor = std::move(fp.predictor);
  out.num_updates = fp.num_updates;
  out.trace = std::move(fp.trace);
  return out;
}

}  // namespace multigroup::experiments
