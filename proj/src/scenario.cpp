#include "multigroup/experiments/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "multigroup/learners/learners.hpp"

namespace multigroup::experiments {

Scenario scenario_from_name(const std::string& name) {
  if (name == "criterion_selection") return Scenario::CriterionSelection;
  if (name == "unbalanced") return Scenario::Unbalanced;
  if (name == "spatial") return Scenario::Spatial;
  if (name == "fractional_ablation") return Scenario::FractionalAblation;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::CriterionSelection:
      return "criterion_selection";
    case Scenario::Unbalanced:
      return "unbalanced";
    case Scenario::Spatial:
      return "spatial";
    case Scenario::FractionalAblation:
      return "fractional_ablation";
  }
  return "?";
}

namespace {

using learners::Method;

// The sparse mechanism only terminates when sigma is small against lambda:
// a sweep over P pairs stays crossing-free with probability about
// 1 - P/2 * exp(-lambda/(2 sigma)), so sigma is gridded as a fraction of
// lambda rather than independently.
HyperGrid shaky_grid(const std::vector<double>& lambdas,
                     const std::vector<double>& ratios,
                     const std::vector<double>& etas = {1.0}) {
  HyperGrid grid;
  for (double l : lambdas) {
    for (double r : ratios) {
      for (double e : etas) {
        HyperPoint p;
        p.lambda = l;
        p.sigma = l / r;
        p.eta = e;
        grid.push_back(p);
      }
    }
  }
  return grid;
}

MethodSpec spec_prepend() {
  return {Method::Prepend, make_grid({0.01, 0.02, 0.05, 0.1})};
}
MethodSpec spec_group_prepend() {
  return {Method::GroupPrepend, make_grid({0.002, 0.005, 0.01, 0.02, 0.05})};
}
MethodSpec spec_shaky() {
  return {Method::ShakyPrepend, shaky_grid({0.005, 0.01, 0.02}, {50, 20})};
}
MethodSpec spec_sleeping() {
  return {Method::SleepingExpert, make_grid({0.05}, {0.0}, {1.0}, {1, 4, 16})};
}

}  // namespace

ScenarioConfig preset(Scenario s) {
  ScenarioConfig cfg;
  cfg.scenario = s;
  switch (s) {
    case Scenario::Spatial:
      cfg.n_train = 200;
      cfg.n_val = 200;
      cfg.n_test = 2000;
      cfg.noise_sd = 0.1;
      cfg.criterion = Criterion::TotalLoss;
      cfg.methods = {spec_prepend(), spec_group_prepend(), spec_shaky(),
                     spec_sleeping()};
      break;
    case Scenario::Unbalanced:
      cfg.n_train = 120;
      cfg.n_val = 120;
      cfg.n_test = 2000;
      cfg.noise_sd = 0.2;
      cfg.criterion = Criterion::WorstGroupLoss;
      cfg.methods = {spec_prepend(), spec_group_prepend(), spec_shaky(),
                     spec_sleeping()};
      break;
    case Scenario::CriterionSelection:
      cfg.n_train = 260;
      cfg.n_val = 130;
      cfg.n_test = 2000;
      cfg.noise_sd = 0.1;
      cfg.criterion = Criterion::TotalLoss;
      cfg.methods = {spec_prepend(), spec_group_prepend(), spec_shaky(),
                     spec_sleeping()};
      break;
    case Scenario::FractionalAblation: {
      cfg.n_train = 200;
      cfg.n_val = 200;
      cfg.n_test = 2000;
      cfg.noise_sd = 0.1;
      cfg.criterion = Criterion::TotalLoss;
      cfg.methods = {
          {Method::Prepend, make_grid({0.01, 0.02, 0.05})},
          {Method::FractionalPrepend,
           make_grid({0.01, 0.02, 0.05}, {0.0}, {0.5, 1.0})},
          {Method::GroupPrepend, make_grid({0.005, 0.01, 0.02})},
          {Method::FractionalGroupPrepend,
           make_grid({0.005, 0.01, 0.02}, {0.0}, {0.5, 1.0})},
          {Method::ShakyPrepend, shaky_grid({0.005, 0.01, 0.02}, {50, 20})},
          {Method::FractionalShakyPrepend,
           shaky_grid({0.005, 0.01, 0.02}, {50, 20}, {0.5, 1.0})},
      };
      break;
    }
  }
  return cfg;
}

ScenarioConfig preset_criterion_large() {
  ScenarioConfig cfg = preset(Scenario::CriterionSelection);
  cfg.n_train = 26000;
  cfg.n_val = 6500;
  return cfg;
}

Instance make_instance(const ScenarioConfig& cfg, std::size_t n,
                       std::uint64_t seed, bool test_set) {
  switch (cfg.scenario) {
    case Scenario::Spatial:
    case Scenario::FractionalAblation: {
      const double sd = test_set ? 0.0 : cfg.noise_sd;
      return {gen_spatial(n, sd, seed), interval_grid_groups()};
    }
    case Scenario::Unbalanced: {
      UnbalancedConfig u;
      u.n = n;
      u.noise_sd = cfg.noise_sd;
      return gen_unbalanced(u, seed);
    }
    case Scenario::CriterionSelection: {
      CriterionConfig c;
      c.n = n;
      c.noise_sd = cfg.noise_sd;
      return gen_criterion(c, seed);
    }
  }
  throw std::logic_error("unreachable");
}

core::HypothesisClass scenario_hypotheses(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::Spatial:
    case Scenario::FractionalAblation:
    case Scenario::Unbalanced:
      // Constants spanning the target range [0,1], step 0.1.
      return core::HypothesisClass::constant_grid(0.0, 1.0, 0.1);
    case Scenario::CriterionSelection:
      return core::HypothesisClass::constant_grid(4.0, 4.6, 0.1);
  }
  throw std::logic_error("unreachable");
}

std::uint64_t train_seed(const ScenarioConfig& cfg, std::size_t run) {
  return cfg.seed + 0x1000000ULL + run;
}
std::uint64_t val_seed(const ScenarioConfig& cfg, std::size_t run) {
  return cfg.seed + 0x2000000ULL + run;
}
std::uint64_t test_seed(const ScenarioConfig& cfg) {
  return cfg.seed + 0x3000000ULL;
}

std::vector<MethodAggregate> aggregate_rows(const std::vector<RunRow>& rows) {
  std::vector<MethodAggregate> out;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (std::find(order.begin(), order.end(), r.method) == order.end()) {
      order.push_back(r.method);
    }
  }
  for (const auto& m : order) {
    MethodAggregate agg;
    agg.method = m;
    std::vector<double> totals, worsts;
    for (const auto& r : rows) {
      if (r.method != m) continue;
      totals.push_back(r.total_loss);
      worsts.push_back(r.worst_group_loss);
    }
    agg.runs = totals.size();
    const auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    const auto se = [&](const std::vector<double>& v, double mu) {
      if (v.size() < 2) return 0.0;
      double s2 = 0.0;
      for (double x : v) s2 += (x - mu) * (x - mu);
      s2 /= static_cast<double>(v.size() - 1);
      return std::sqrt(s2 / static_cast<double>(v.size()));
    };
    agg.total_mean = mean(totals);
    agg.total_se = se(totals, agg.total_mean);
    agg.worst_mean = mean(worsts);
    agg.worst_se = se(worsts, agg.worst_mean);
    out.push_back(agg);
  }
  return out;
}

ExperimentResult run_scenario(const ScenarioConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (cfg.methods.empty()) throw std::invalid_argument("no methods");
  for (const auto& m : cfg.methods) {
    if (m.grid.empty()) throw std::invalid_argument("empty grid");
  }

  const core::BoundedLoss loss = cfg.loss();
  const Instance test = make_instance(cfg, cfg.n_test, test_seed(cfg), true);
  const core::GroupIndex gi_test =
      core::GroupIndex::build(test.groups, test.data);
  const core::HypothesisClass hyps = scenario_hypotheses(cfg);

  const std::size_t cells = cfg.runs * cfg.methods.size();
  std::vector<RunRow> rows(cells);
  std::vector<std::string> errors(cells);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t cell = 0; cell < static_cast<std::ptrdiff_t>(cells);
       ++cell) {
    const std::size_t run = static_cast<std::size_t>(cell) / cfg.methods.size();
    const std::size_t mi = static_cast<std::size_t>(cell) % cfg.methods.size();
    const MethodSpec& spec = cfg.methods[mi];
    try {
      const auto t0 = std::chrono::steady_clock::now();
      // Data is shared across methods within a run: the seeds depend only
      // on the run index, and generation is deterministic.
      const Instance train =
          make_instance(cfg, cfg.n_train, train_seed(cfg, run), false);
      const Instance val =
          make_instance(cfg, cfg.n_val, val_seed(cfg, run), false);

      TuneOutcome tuned =
          tune(train.data, val.data, spec.method, spec.grid, cfg.criterion,
               loss, cfg.seed + run, train.groups, hyps);
      const Evaluation ev =
          evaluate_predictor(test.data, gi_test, tuned.predictor, loss);
      const auto t1 = std::chrono::steady_clock::now();

      RunRow& row = rows[static_cast<std::size_t>(cell)];
      row.run_id = run;
      row.method = learners::method_name(spec.method);
      row.seed = cfg.seed + run;
      row.n = cfg.n_train;
      row.hypers = tuned.best;
      row.criterion = cfg.criterion;
      row.total_loss = ev.total;
      row.worst_group_loss = ev.worst;
      row.worst_group_id = ev.worst_group;
      row.num_updates = tuned.num_updates;
      row.wall_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(cell)] =
          learners::method_name(spec.method) + " run " + std::to_string(run) +
          ": " + e.what();
    }
  }

  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }

  // Deterministic row order: method (preset order), then run.
  std::vector<RunRow> sorted;
  sorted.reserve(cells);
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    for (std::size_t run = 0; run < cfg.runs; ++run) {
      sorted.push_back(rows[run * cfg.methods.size() + mi]);
    }
  }

  ExperimentResult result;
  result.config = cfg;
  result.rows = std::move(sorted);
  result.aggregates = aggregate_rows(result.rows);
  return result;
}

}  // namespace multigroup::experiments
