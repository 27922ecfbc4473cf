#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "multigroup/experiments/generators.hpp"
#include "multigroup/experiments/scenario.hpp"
#include "multigroup/experiments/tune.hpp"
#include "multigroup/ops.hpp"

using namespace multigroup;
using experiments::Criterion;
using experiments::Scenario;

TEST_CASE("spatial generator: determinism, noise-off exactness") {
  const auto d0 = experiments::gen_spatial(200, 0.0, 7);
  const auto target = experiments::spatial_target();
  for (std::size_t i = 0; i < d0.size(); ++i) {
    CHECK(d0.y(i) == target(d0.x(i)[0]));  // zero noise: y is the target
    CHECK(d0.x(i)[0] >= 0.0);
    CHECK(d0.x(i)[0] <= 1.0);
  }

  const auto a = experiments::gen_spatial(200, 0.1, 42);
  const auto b = experiments::gen_spatial(200, 0.1, 42);
  const auto c = experiments::gen_spatial(200, 0.1, 43);
  bool same = true, diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a.x(i)[0] == b.x(i)[0] && a.y(i) == b.y(i);
    diff = diff || a.y(i) != c.y(i);
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("interval grid: 420 groups at the default steps") {
  const auto fam = experiments::interval_grid_groups();
  CHECK(fam.size() == 420);  // 21 centers x 20 lengths
  fam.validate();

  // (c=0.5, l=1) covers all of [0,1]
  bool found_full = false;
  for (const auto& g : fam.groups) {
    REQUIRE(g.interval.has_value());
    if (g.interval->lo <= 0.0 && g.interval->hi >= 1.0) found_full = true;
  }
  CHECK(found_full);

  // first group is (c=0, l=0.05) = [-0.025, 0.025]
  CHECK(fam.groups[0].interval->lo == doctest::Approx(-0.025));
  CHECK(fam.groups[0].interval->hi == doctest::Approx(0.025));
  CHECK(fam.groups[0].indicator(std::vector<double>{0.02}));
  CHECK(!fam.groups[0].indicator(std::vector<double>{0.03}));

  CHECK_THROWS_AS(experiments::interval_grid_groups(0.03, 0.05),
                  std::invalid_argument);
}

TEST_CASE("unbalanced family: cover, partition and disjointness") {
  const auto inst = experiments::gen_unbalanced(120, 99);
  CHECK(inst.data.size() == 120);
  REQUIRE(inst.groups.size() == 7);

  const auto gi = core::GroupIndex::build(inst.groups, inst.data);
  const std::size_t n = inst.data.size();

  // group 0 covers everything
  CHECK(gi.counts[0] == n);

  for (std::size_t i = 0; i < n; ++i) {
    // halves partition the domain
    CHECK((gi.masks[1].test(i) ^ gi.masks[2].test(i)));
    // quarters partition group 2's support and avoid group 1
    const int quarters = gi.masks[3].test(i) + gi.masks[4].test(i) +
                         gi.masks[5].test(i) + gi.masks[6].test(i);
    if (gi.masks[2].test(i)) {
      CHECK(quarters == 1);
    } else {
      CHECK(quarters == 0);
    }
    if (gi.masks[1].test(i)) CHECK(quarters == 0);
  }
}

TEST_CASE("criterion-selection family: shares and targets") {
  const auto inst = experiments::gen_criterion(2000, 5);
  REQUIRE(inst.groups.size() == 4);
  const auto gi = core::GroupIndex::build(inst.groups, inst.data);

  // group 3 (the tension group) has the smallest sample share
  for (std::size_t g = 0; g < 3; ++g) {
    CHECK(gi.counts[3] < gi.counts[g]);
  }
  // every x belongs to the cover group
  CHECK(gi.counts[0] == inst.data.size());

  // bulk level: noiseless mean of y in (3,5] is 4.1
  experiments::CriterionConfig cfg;
  cfg.n = 2000;
  cfg.noise_sd = 0.0;
  const auto quiet = experiments::gen_criterion(cfg, 5);
  for (std::size_t i = 0; i < quiet.data.size(); ++i) {
    const double x = quiet.data.x(i)[0];
    if (x > 3.0) CHECK(quiet.data.y(i) == 4.1);
    if (x <= 2.0) CHECK(quiet.data.y(i) == 4.5);
  }
}

TEST_CASE("tune: selection, tie-break, row-order invariance") {
  const auto sq = core::BoundedLoss::clamped_squared(1.0);
  const auto train = experiments::gen_spatial(150, 0.1, 21);
  const auto val = experiments::gen_spatial(150, 0.1, 22);
  const auto groups = experiments::interval_grid_groups(0.25, 0.25);
  const auto hyps = core::HypothesisClass::constant_grid(0.0, 1.0, 0.1);

  // single grid point: returned unconditionally
  {
    const auto out = experiments::tune(
        train, val, learners::Method::GroupPrepend,
        experiments::make_grid({0.02}), Criterion::TotalLoss, sq, 1, groups,
        hyps);
    CHECK(out.best_index == 0);
    CHECK(out.table.size() == 1);
  }

  // a vacuous lambda (no updates) loses to a working one on total loss
  {
    const auto out = experiments::tune(
        train, val, learners::Method::GroupPrepend,
        experiments::make_grid({1.5, 0.01}), Criterion::TotalLoss, sq, 1,
        groups, hyps);
    CHECK(out.best_index == 1);
    CHECK(out.table[1].val_total < out.table[0].val_total);
  }

  // duplicated grid point: lowest index wins
  {
    const auto out = experiments::tune(
        train, val, learners::Method::GroupPrepend,
        experiments::make_grid({0.02, 0.02}), Criterion::TotalLoss, sq, 1,
        groups, hyps);
    CHECK(out.best_index == 0);
  }

  // same seed, same selection; permuted validation rows, same selection
  {
    const auto grid = experiments::make_grid({0.005, 0.02, 0.1});
    const auto o1 = experiments::tune(train, val,
                                      learners::Method::GroupPrepend, grid,
                                      Criterion::WorstGroupLoss, sq, 9, groups,
                                      hyps);
    const auto o2 = experiments::tune(train, val,
                                      learners::Method::GroupPrepend, grid,
                                      Criterion::WorstGroupLoss, sq, 9, groups,
                                      hyps);
    CHECK(o1.best_index == o2.best_index);

    // reverse the validation set
    std::vector<double> xs, ys;
    for (std::size_t i = val.size(); i-- > 0;) {
      xs.push_back(val.x(i)[0]);
      ys.push_back(val.y(i));
    }
    const auto val_rev = core::Dataset::univariate(std::move(xs), std::move(ys));
    const auto o3 = experiments::tune(train, val_rev,
                                      learners::Method::GroupPrepend, grid,
                                      Criterion::WorstGroupLoss, sq, 9, groups,
                                      hyps);
    CHECK(o1.best_index == o3.best_index);
  }

  // all groups empty in val under worst-group: error
  {
    std::vector<double> xs{5.0, 6.0}, ys{0.0, 0.0};  // outside every interval
    const auto far = core::Dataset::univariate(std::move(xs), std::move(ys));
    CHECK_THROWS_AS(
        experiments::tune(train, far, learners::Method::GroupPrepend,
                          experiments::make_grid({0.02}),
                          Criterion::WorstGroupLoss, sq, 1, groups, hyps),
        std::invalid_argument);
  }
}

TEST_CASE("run_scenario: smoke run, aggregates, determinism") {
  auto cfg = experiments::preset(Scenario::Unbalanced);
  cfg.runs = 3;
  cfg.methods = {{learners::Method::Prepend, experiments::make_grid({0.02})},
                 {learners::Method::GroupPrepend,
                  experiments::make_grid({0.005, 0.02})}};
  cfg.seed = 12;

  const auto res = experiments::run_scenario(cfg);
  CHECK(res.rows.size() == 6);
  REQUIRE(res.aggregates.size() == 2);

  // aggregates recompute exactly from rows
  const auto again = experiments::aggregate_rows(res.rows);
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(res.aggregates[i].total_mean == again[i].total_mean);
    CHECK(res.aggregates[i].total_se == again[i].total_se);
    CHECK(res.aggregates[i].worst_mean == again[i].worst_mean);
    CHECK(res.aggregates[i].worst_se == again[i].worst_se);
  }

  // rows are sorted by (method order, run)
  CHECK(res.rows[0].method == "prepend");
  CHECK(res.rows[0].run_id == 0);
  CHECK(res.rows[3].method == "group_prepend");

  // scenario-level determinism
  const auto res2 = experiments::run_scenario(cfg);
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(res.rows[i].total_loss == res2.rows[i].total_loss);
    CHECK(res.rows[i].worst_group_loss == res2.rows[i].worst_group_loss);
    CHECK(res.rows[i].hypers.lambda == res2.rows[i].hypers.lambda);
  }

  // test sets are seed-disjoint from train/val streams
  CHECK(experiments::test_seed(cfg) != experiments::train_seed(cfg, 0));
  CHECK(experiments::test_seed(cfg) != experiments::val_seed(cfg, 0));
}

TEST_CASE("evaluate_predictor: undefined groups are counted, not scored") {
  const auto sq = core::BoundedLoss::clamped_squared(1.0);
  std::vector<double> xs{0.1, 0.2, 0.3}, ys{0.5, 0.5, 0.5};
  const auto d = core::Dataset::univariate(std::move(xs), std::move(ys));
  core::GroupFamily fam;
  fam.groups.push_back(core::Group::interval_group(0, 0.0, 1.0));
  fam.groups.push_back(core::Group::interval_group(1, 0.8, 0.9));  // empty
  const auto gi = core::GroupIndex::build(fam, d);

  const auto f = [](std::span<const double>) { return 0.4; };
  const auto ev = experiments::evaluate_predictor(d, gi, f, sq);
  CHECK(ev.undefined_groups == 1);
  CHECK(ev.worst_group == 0);
  CHECK(ev.total == doctest::Approx(0.01));
  CHECK(ev.worst == doctest::Approx(0.01));
}
