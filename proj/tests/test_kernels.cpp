#include "doctest.h"

#include "helpers.hpp"
#include "multigroup/kernels.hpp"

using namespace multigroup;
using core::GroupIndex;

// The parallel kernels must match their serial references bit for bit at
// any thread count; every per-element computation is identical and only the
// partitioning differs.

TEST_CASE("per-record and per-group kernels match serial references") {
  util::Rng rng(101);
  const auto sq = core::BoundedLoss::clamped_squared(1.0);
  for (int k = 0; k < 25; ++k) {
    const auto inst = testutil::random_instance(rng, 300, 10, 6);
    const double c = rng.uniform01();
    const core::PredictorFn f = [c](std::span<const double> x) {
      return c * x[0];
    };

    const auto vp = kernels::predict_all(inst.data, f);
    const auto vs = kernels::predict_all_serial(inst.data, f);
    REQUIRE(vp == vs);

    const auto lp = kernels::losses_of_values(inst.data, vp, sq);
    const auto ls = kernels::losses_of_values_serial(inst.data, vs, sq);
    REQUIRE(lp == ls);

    const auto gi = GroupIndex::build(inst.groups, inst.data);
    const auto gp = kernels::group_sums(gi, lp);
    const auto gs = kernels::group_sums_serial(gi, ls);
    REQUIRE(gp == gs);

    // and against the naive masked sum
    for (std::size_t g = 0; g < gi.size(); ++g) {
      double naive = 0.0;
      for (std::size_t i = 0; i < inst.data.size(); ++i) {
        if (gi.masks[g].test(i)) naive += lp[i];
      }
      CHECK(gp[g] == naive);
    }
  }
}

TEST_CASE("pair enumeration skips empty groups") {
  std::vector<double> xs{0.1, 0.2, 0.3};
  std::vector<double> ys{0.0, 0.0, 0.0};
  const auto d = core::Dataset::univariate(std::move(xs), std::move(ys));
  core::GroupFamily fam;
  fam.groups.push_back(core::Group::interval_group(0, 0.0, 1.0));
  fam.groups.push_back(core::Group::interval_group(1, 0.8, 0.9));  // empty
  fam.groups.push_back(core::Group::interval_group(2, 0.0, 0.15));
  const auto gi = GroupIndex::build(fam, d);
  const auto pairs = kernels::enumerate_pairs(gi, 2);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0] == std::pair<int, int>{0, 0});
  CHECK(pairs[1] == std::pair<int, int>{0, 1});
  CHECK(pairs[2] == std::pair<int, int>{2, 0});
  CHECK(pairs[3] == std::pair<int, int>{2, 1});
}

TEST_CASE("argmax scan matches serial and breaks ties low") {
  util::Rng rng(55);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 1 + rng.below(500);
    std::vector<double> stats(m);
    for (auto& s : stats) s = rng.uniform(-1, 1);
    // inject a duplicated maximum half the time
    if (m > 3 && rng.uniform01() < 0.5) {
      const std::size_t a = rng.below(m);
      const std::size_t b = rng.below(m);
      stats[a] = stats[b] = 2.0;
    }
    const auto par = kernels::argmax_pair(stats);
    const auto ser = kernels::argmax_pair_serial(stats);
    CHECK(par.index == ser.index);
    CHECK(par.stat == ser.stat);
  }
  const auto none = kernels::argmax_pair(std::span<const double>{});
  CHECK(none.index == -1);
}

TEST_CASE("pair statistics match naive gap computation") {
  util::Rng rng(77);
  const auto sq = core::BoundedLoss::clamped_squared(1.0);
  for (int k = 0; k < 20; ++k) {
    const auto inst = testutil::random_instance(rng, 120, 6, 5);
    const auto gi = GroupIndex::build(inst.groups, inst.data);
    const std::size_t num_hyps = inst.hyps.size();
    const auto pairs = kernels::enumerate_pairs(gi, num_hyps);

    // f = first hypothesis as the current predictor
    const auto f_values =
        kernels::predict_all(inst.data, inst.hyps.hyps[0].predict);
    const auto f_losses = kernels::losses_of_values(inst.data, f_values, sq);
    const auto sumf = kernels::group_sums(gi, f_losses);

    std::vector<std::vector<double>> hyp_values(num_hyps);
    std::vector<double> hyp_group_sums(gi.size() * num_hyps);
    for (std::size_t h = 0; h < num_hyps; ++h) {
      hyp_values[h] =
          kernels::predict_all(inst.data, inst.hyps.hyps[h].predict);
      const auto hl = kernels::losses_of_values(inst.data, hyp_values[h], sq);
      for (std::size_t g = 0; g < gi.size(); ++g) {
        hyp_group_sums[g * num_hyps + h] = core::masked_sum(gi.masks[g], hl);
      }
    }

    for (const bool weighted : {false, true}) {
      std::vector<double> stats(pairs.size());
      kernels::pair_stats(pairs, sumf, hyp_group_sums, num_hyps, gi.counts,
                          inst.data.size(), weighted, stats);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [g, h] = pairs[p];
        double nf = 0.0, nh = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < inst.data.size(); ++i) {
          if (!gi.masks[static_cast<std::size_t>(g)].test(i)) continue;
          ++cnt;
          nf += f_losses[i];
          nh += sq.eval(hyp_values[static_cast<std::size_t>(h)][i],
                        inst.data.y(i));
        }
        const double denom = weighted ? static_cast<double>(inst.data.size())
                                      : static_cast<double>(cnt);
        CHECK(stats[p] == doctest::Approx((nf - nh) / denom).epsilon(1e-14));
      }

      // fractional path at a few etas, parallel vs serial bitwise
      for (const double eta : {0.25, 0.5, 1.0}) {
        std::vector<double> fr(pairs.size()), fr_ser(pairs.size());
        kernels::fractional_pair_stats(inst.data, gi, pairs, f_values, sumf,
                                       hyp_values, eta, sq, weighted, fr);
        kernels::fractional_pair_stats_serial(inst.data, gi, pairs, f_values,
                                              sumf, hyp_values, eta, sq,
                                              weighted, fr_ser);
        REQUIRE(fr == fr_ser);
        if (eta == 1.0) REQUIRE(fr == stats);  // blend(., h, 1) == h exactly
      }
    }
  }
}
