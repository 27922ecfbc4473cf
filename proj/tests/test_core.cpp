#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "multigroup/ops.hpp"

using namespace multigroup;
using core::Bitmask;
using core::BoundedLoss;
using core::Dataset;
using core::Group;
using core::GroupFamily;
using core::Hypothesis;
using core::HypothesisClass;
using core::UpdateChain;

namespace {

Dataset const_x_dataset(std::vector<double> ys) {
  std::vector<double> xs(ys.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.1 * static_cast<double>(i);
  return Dataset::univariate(std::move(xs), std::move(ys));
}

}  // namespace

TEST_CASE("bounded losses stay in [0,1] and clamp") {
  const auto sq = BoundedLoss::clamped_squared(1.0);
  const auto ab = BoundedLoss::clamped_absolute(1.0);
  const auto zo = BoundedLoss::zero_one();

  CHECK(sq.eval(0.5, 0.5) == 0.0);
  CHECK(sq.eval(2.5, 0.0) == 1.0);  // clamped
  CHECK(sq.eval(0.0, 0.5) == doctest::Approx(0.25));
  CHECK(ab.eval(0.0, 0.7) == 0.7);
  CHECK(ab.eval(-3.0, 3.0) == 1.0);
  CHECK(zo.eval(0.2, 0.0) == 0.0);
  CHECK(zo.eval(0.7, 0.0) == 1.0);
  CHECK(zo.eval(0.7, 1.0) == 0.0);

  // scaled squared keeps wide targets in range
  const auto sq5 = BoundedLoss::clamped_squared(5.0);
  CHECK(sq5.eval(4.5, 0.0) == doctest::Approx(0.81));

  util::Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    const double z = rng.uniform(-10, 10);
    const double y = rng.uniform(-10, 10);
    for (const auto* loss : {&sq, &ab, &zo}) {
      const double v = loss->eval(z, y);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }

  CHECK_THROWS_AS(BoundedLoss::clamped_squared(0.0), std::invalid_argument);
}

TEST_CASE("dataset invariants") {
  CHECK_THROWS_AS(Dataset::univariate({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0}, {1.0, 2.0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(Dataset::from_rows({{1.0, 2.0}, {3.0}}, {0.0, 1.0}),
                  std::invalid_argument);

  const auto d = const_x_dataset({0.1, 0.2});
  CHECK(d.size() == 2);
  CHECK(d.dim() == 1);
  const auto d2 = d.with_record(1, std::vector<double>{0.9}, 0.5);
  CHECK(d2.y(1) == 0.5);
  CHECK(d.y(1) == 0.2);  // original untouched
}

TEST_CASE("group masks agree with indicators") {
  util::Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto inst = testutil::random_instance(rng, 60, 6, 4);
    for (const auto& g : inst.groups.groups) {
      const Bitmask m = g.mask(inst.data);
      REQUIRE(m.size() == inst.data.size());
      for (std::size_t i = 0; i < inst.data.size(); ++i) {
        CHECK(m.test(i) == g.indicator(inst.data.x(i)));
      }
      CHECK(m.count() <= inst.data.size());
    }
  }

  GroupFamily bad;
  bad.groups.push_back(Group::all(1));  // ids must start at 0
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(GroupFamily{}.validate(), std::invalid_argument);
}

TEST_CASE("erm picks the minimizer with lowest-id ties") {
  const auto sq = BoundedLoss::clamped_squared(1.0);

  // exact-match constant
  {
    const auto d = const_x_dataset({0.5, 0.5});
    const auto hc =
        HypothesisClass::constants(std::vector<double>{0.0, 0.5, 1.0});
    const auto& h = core::erm(d, hc, sq);
    CHECK(h.id == 1);
    CHECK(core::conditional_loss(d, h.predict, sq, Group::all(0)) == 0.0);
  }

  // enumerate both constants under zero-one loss: constant 0 wins at 1/3
  {
    const auto d = const_x_dataset({0.0, 0.0, 1.0});
    const auto hc = HypothesisClass::constants(std::vector<double>{0.0, 1.0});
    double best_loss = 2.0;
    int best_id = -1;  // independent enumeration oracle
    const auto zo = BoundedLoss::zero_one();
    for (const auto& h : hc.hyps) {
      double sum = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        sum += zo.eval(h.predict(d.x(i)), d.y(i));
      }
      if (sum / 3.0 < best_loss) {
        best_loss = sum / 3.0;
        best_id = h.id;
      }
    }
    CHECK(best_id == 0);
    CHECK(best_loss == doctest::Approx(1.0 / 3.0));
    const auto& h = core::erm(d, hc, zo);
    CHECK(h.id == best_id);
    CHECK(core::conditional_loss(d, h.predict, zo, Group::all(0)) ==
          doctest::Approx(1.0 / 3.0));
  }

  // identical hypotheses: lowest id wins
  {
    const auto d = const_x_dataset({0.3, 0.6});
    const auto hc = HypothesisClass::constants(std::vector<double>{0.4, 0.4});
    CHECK(core::erm(d, hc, sq).id == 0);
  }

  // empty mask
  {
    const auto d = const_x_dataset({0.3, 0.6});
    const auto hc = HypothesisClass::constants(std::vector<double>{0.4});
    Bitmask empty(d.size());
    CHECK_THROWS_WITH_AS(core::erm(d, hc, sq, &empty), "empty group",
                         std::invalid_argument);
  }
}

TEST_CASE("conditional loss averages member records") {
  const auto ab = BoundedLoss::clamped_absolute(1.0);
  // per-record losses {0.2, 0.9, 0.4, 0.9} via absolute loss against 0
  const auto d = const_x_dataset({0.2, 0.9, 0.4, 0.9});
  const auto zero = [](std::span<const double>) { return 0.0; };

  Bitmask members(d.size());
  members.set(0);
  members.set(2);
  const double expected = (0.2 + 0.4) / 2.0;  // direct summation oracle
  const double got = core::conditional_loss(d, zero, ab, members);
  CHECK(got == expected);
  CHECK(got == doctest::Approx(0.3).epsilon(1e-12));

  // all-ones group + perfect constant fit
  const auto copy_y = const_x_dataset({0.4, 0.4, 0.4});
  const auto const04 = [](std::span<const double>) { return 0.4; };
  CHECK(core::conditional_loss(copy_y, const04,
                               BoundedLoss::clamped_squared(1.0),
                               Group::all(0)) == 0.0);

  // singleton group
  Bitmask single(d.size());
  single.set(1);
  CHECK(core::conditional_loss(d, zero, ab, single) == 0.9);

  // empty group
  Bitmask empty(d.size());
  CHECK_THROWS_WITH_AS(core::conditional_loss(d, zero, ab, empty),
                       "empty group", std::invalid_argument);
}

TEST_CASE("conditional loss ignores non-member permutations") {
  const auto ab = BoundedLoss::clamped_absolute(1.0);
  const auto zero = [](std::span<const double>) { return 0.0; };
  const auto d = const_x_dataset({0.1, 0.5, 0.3, 0.7, 0.9});
  Bitmask members(d.size());
  members.set(1);
  members.set(3);
  const double before = core::conditional_loss(d, zero, ab, members);

  // permute records 0, 2, 4 among themselves
  auto d2 = d.with_record(0, d.x(4), d.y(4))
                .with_record(2, d.x(0), d.y(0))
                .with_record(4, d.x(2), d.y(2));
  const double after = core::conditional_loss(d2, zero, ab, members);
  CHECK(before == after);
}

TEST_CASE("weighted gap matches arithmetic and is antisymmetric") {
  const auto ab = BoundedLoss::clamped_absolute(1.0);
  const auto d = const_x_dataset({0.8, 0.8, 0.1, 0.2});
  Bitmask members(d.size());
  members.set(0);
  members.set(1);

  const auto f = [](std::span<const double>) { return 0.0; };
  const auto h = [](std::span<const double>) { return 0.6; };

  // oracle: P_n(g) * (L_n(f|g) - L_n(h|g)) from conditional_loss outputs
  const double p = 2.0 / 4.0;
  const double expected = p * (core::conditional_loss(d, f, ab, members) -
                               core::conditional_loss(d, h, ab, members));
  const double got = core::weighted_gap(d, f, h, ab, members);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  CHECK(got == doctest::Approx(0.3).epsilon(1e-9));

  // f == h
  CHECK(core::weighted_gap(d, f, f, ab, members) == 0.0);

  // empty group -> 0, no throw
  Bitmask empty(d.size());
  CHECK(core::weighted_gap(d, f, h, ab, empty) == 0.0);

  // antisymmetry, exact
  util::Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const auto inst = testutil::random_instance(rng, 40, 5, 3);
    const double c1 = rng.uniform01();
    const double c2 = rng.uniform01();
    const auto f1 = [c1](std::span<const double>) { return c1; };
    const auto f2 = [c2](std::span<const double>) { return c2; };
    for (const auto& g : inst.groups.groups) {
      const double ab_gap = core::weighted_gap(inst.data, f1, f2, ab, g);
      const double ba_gap = core::weighted_gap(inst.data, f2, f1, ab, g);
      CHECK(ab_gap == -ba_gap);
      CHECK(ab_gap >= -1.0);
      CHECK(ab_gap <= 1.0);
    }
  }
}

TEST_CASE("chain evaluation follows the update recursion") {
  const auto base = Hypothesis::constant(0, 0.0);

  // empty chain
  UpdateChain chain{base, {}};
  std::vector<double> x{0.4};
  CHECK(chain.evaluate(x) == 0.0);

  // full replacement on covered x
  chain.updates.push_back({1.0, Group::all(0), Hypothesis::constant(1, 0.7)});
  CHECK(chain.evaluate(x) == 0.7);

  // half step: 0 + 0.5 * (1 - 0) = 0.5
  UpdateChain half{base, {}};
  half.updates.push_back({0.5, Group::all(0), Hypothesis::constant(1, 1.0)});
  CHECK(half.evaluate(x) == 0.5);

  // uncovered x keeps the previous value
  UpdateChain off{base, {}};
  off.updates.push_back(
      {1.0, Group::interval_group(0, 0.8, 0.9), Hypothesis::constant(1, 1.0)});
  CHECK(off.evaluate(x) == 0.0);
}

TEST_CASE("all-ones chains equal the recursive decision list") {
  util::Rng rng(19);
  for (int k = 0; k < 200; ++k) {
    const auto inst = testutil::random_instance(rng, 30, 6, 5);
    UpdateChain chain;
    chain.base = inst.hyps.hyps[rng.below(inst.hyps.size())];
    const std::size_t t = rng.below(6);
    for (std::size_t u = 0; u < t; ++u) {
      chain.updates.push_back(
          {1.0, inst.groups.groups[rng.below(inst.groups.size())],
           inst.hyps.hyps[rng.below(inst.hyps.size())]});
    }
    for (std::size_t i = 0; i < inst.data.size(); ++i) {
      const auto x = inst.data.x(i);
      // recursive decision list: latest covering pair decides
      double want = chain.base.predict(x);
      for (auto it = chain.updates.rbegin(); it != chain.updates.rend(); ++it) {
        if (it->group.indicator(x)) {
          want = it->hyp.predict(x);
          break;
        }
      }
      CHECK(core::evaluate_chain(chain, x) == want);
    }
  }
}
