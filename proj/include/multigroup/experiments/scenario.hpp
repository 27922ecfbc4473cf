#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multigroup/experiments/generators.hpp"
#include "multigroup/experiments/tune.hpp"
#include "multigroup/loss.hpp"

namespace multigroup::experiments {

enum class Scenario {
  CriterionSelection,
  Unbalanced,
  Spatial,
  FractionalAblation,
};

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);

struct MethodSpec {
  learners::Method method;
  HyperGrid grid;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::Spatial;
  std::size_t n_train = 200;
  std::size_t n_val = 200;
  std::size_t n_test = 2000;
  double noise_sd = 0.1;
  std::uint64_t seed = 1;
  std::size_t runs = 20;
  Criterion criterion = Criterion::TotalLoss;
  std::vector<MethodSpec> methods;
  double loss_scale = 1.0;  // clamped-squared scale

  core::BoundedLoss loss() const {
    return core::BoundedLoss::clamped_squared(loss_scale);
  }
};

// Paper-aligned defaults per scenario (sizes, noise, method grids).
ScenarioConfig preset(Scenario s);
// criterion-selection large-sample preset: 26,000 training points.
ScenarioConfig preset_criterion_large();

// Scenario data. Train/val draw their seeds from the base seed and the run
// index; the test set is generated once from a reserved seed stream and,
// for the spatial scenario, without observation noise (evaluation is
// against the ground truth there).
Instance make_instance(const ScenarioConfig& cfg, std::size_t n,
                       std::uint64_t seed, bool test_set);
core::HypothesisClass scenario_hypotheses(const ScenarioConfig& cfg);

std::uint64_t train_seed(const ScenarioConfig& cfg, std::size_t run);
std::uint64_t val_seed(const ScenarioConfig& cfg, std::size_t run);
std::uint64_t test_seed(const ScenarioConfig& cfg);

struct RunRow {
  std::size_t run_id = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  HyperPoint hypers;
  Criterion criterion = Criterion::TotalLoss;
  double total_loss = 0.0;
  double worst_group_loss = 0.0;
  int worst_group_id = -1;
  std::size_t num_updates = 0;
  double wall_ms = 0.0;
};

struct MethodAggregate {
  std::string method;
  std::size_t runs = 0;
  double total_mean = 0.0;
  double total_se = 0.0;
  double worst_mean = 0.0;
  double worst_se = 0.0;
};

struct ExperimentResult {
  ScenarioConfig config;
  std::vector<RunRow> rows;          // sorted by (method, run)
  std::vector<MethodAggregate> aggregates;
};

// Recomputable from rows; exposed for the invariant tests.
std::vector<MethodAggregate> aggregate_rows(const std::vector<RunRow>& rows);

// Runs every (method, run) cell — cells are independent and execute in
// parallel with derived seeds — then evaluates on the fixed test set.
ExperimentResult run_scenario(const ScenarioConfig& cfg);

}  // namespace multigroup::experiments
