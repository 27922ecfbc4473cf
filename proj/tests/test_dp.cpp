#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "multigroup/dp/audit.hpp"
#include "multigroup/dp/laplace.hpp"
#include "multigroup/dp/sensitivity.hpp"
#include "multigroup/dp/sparse.hpp"
#include "multigroup/ops.hpp"

using namespace multigroup;
using dp::LaplaceSampler;

TEST_CASE("laplace sampler: seeding, median, moments") {
  LaplaceSampler a(42, 1.5);
  LaplaceSampler b(42, 1.5);
  for (int i = 0; i < 100; ++i) CHECK(a.sample() == b.sample());

  LaplaceSampler c(43, 1.5);
  bool all_equal = true;
  LaplaceSampler a2(42, 1.5);
  for (int i = 0; i < 10; ++i) all_equal = all_equal && a2.sample() == c.sample();
  CHECK(!all_equal);

  CHECK_THROWS_AS(LaplaceSampler(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LaplaceSampler(1, -2.0), std::invalid_argument);

  // noise-off mode: zero draws, stream still consumed
  auto z = LaplaceSampler::zeroed(7);
  for (int i = 0; i < 5; ++i) CHECK(z.sample() == 0.0);
  CHECK(z.draws() == 5);

  // seeded Monte Carlo: mean within 4*sigma/sqrt(N), median near 0
  const double sigma = 2.0;
  LaplaceSampler s(123, sigma);
  const std::size_t big = 1000000;
  double sum = 0.0;
  std::vector<double> head(1001);
  for (std::size_t i = 0; i < big; ++i) {
    const double v = s.sample();
    sum += v;
    if (i < head.size()) head[i] = v;
  }
  CHECK(std::abs(sum / static_cast<double>(big)) <
        4.0 * sigma / std::sqrt(static_cast<double>(big)));
  std::sort(head.begin(), head.end());
  CHECK(std::abs(head[head.size() / 2]) < 0.3);
}

TEST_CASE("laplace tails match exp(-t) and the max-of-k bound") {
  const double sigma = 1.0;
  LaplaceSampler s(2024, sigma);
  const std::size_t big = 1000000;
  std::size_t over_half = 0, over_one = 0, over_two = 0;
  for (std::size_t i = 0; i < big; ++i) {
    const double v = std::abs(s.sample());
    over_half += v >= 0.5 * sigma;
    over_one += v >= 1.0 * sigma;
    over_two += v >= 2.0 * sigma;
  }
  const double nbig = static_cast<double>(big);
  CHECK(std::abs(over_half / nbig - std::exp(-0.5)) < 0.005);
  CHECK(std::abs(over_one / nbig - std::exp(-1.0)) < 0.005);
  CHECK(std::abs(over_two / nbig - std::exp(-2.0)) < 0.005);

  // max of k=20 draws: Pr[max >= sigma ln(k/beta)] <= beta
  const std::size_t k = 20, trials = 100000;
  LaplaceSampler m(9, sigma);
  for (const double beta : {0.1, 0.3}) {
    const double cut = sigma * std::log(static_cast<double>(k) / beta);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      double mx = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        mx = std::max(mx, std::abs(m.sample()));
      }
      hits += mx >= cut;
    }
    CHECK(static_cast<double>(hits) / static_cast<double>(trials) <=
          beta + 0.01);
  }
}

TEST_CASE("sparse mechanism: noise-off comparator semantics") {
  auto z = LaplaceSampler::zeroed(1);
  auto state = dp::sparse_init(0.3, z);
  CHECK(state.noisy_threshold == 0.3);

  CHECK(dp::sparse_step(state, 0.3, {}, 0.5, z));   // 0.5 >= 0.3
  CHECK(!dp::sparse_step(state, 0.3, {}, 0.2, z));  // 0.2 < 0.3

  // bit-exact against a plain comparator on random query streams
  util::Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto zz = LaplaceSampler::zeroed(static_cast<std::uint64_t>(rep));
    const double lambda = rng.uniform(0.1, 0.9);
    auto st = dp::sparse_init(lambda, zz);
    for (int i = 0; i < 200; ++i) {
      const double q = rng.uniform(-1, 1);
      CHECK(dp::sparse_step(st, lambda, {}, q, zz) == (q >= lambda));
    }
    // transcript invariant: count equals the number of crossings
    std::size_t tops = 0;
    for (const auto& r : st.transcript) tops += r.top;
    CHECK(st.count == tops);
    // one init draw + one per query + one per crossing (resample)
    CHECK(zz.draws() == 1 + st.transcript.size() + tops);
  }
}

TEST_CASE("sparse mechanism: stopping rule and halted error") {
  auto z = LaplaceSampler::zeroed(3);
  auto state = dp::sparse_init(0.5, z);
  const dp::StoppingRule stop_after_first =
      [](std::size_t count, std::size_t, std::size_t) { return count >= 1; };
  CHECK(!dp::sparse_step(state, 0.5, stop_after_first, 0.1, z));
  CHECK(!state.halted);
  CHECK(dp::sparse_step(state, 0.5, stop_after_first, 0.9, z));
  CHECK(state.halted);
  CHECK_THROWS_WITH_AS(dp::sparse_step(state, 0.5, stop_after_first, 0.9, z),
                       "halted", std::logic_error);
}

TEST_CASE("sparse config derives the noise scale") {
  dp::SparseConfig cfg;
  cfg.delta_sensitivity = 1.0;
  cfg.lambda = 0.3;
  cfg.epsilon = 1.0;
  cfg.delta = std::exp(-1.0);
  CHECK(cfg.noise_scale() == doctest::Approx(std::sqrt(32.0)).epsilon(1e-12));

  cfg.delta_sensitivity = 4.0 / 100.0;  // weighted-gap sensitivity at n=100
  CHECK(cfg.noise_scale() ==
        doctest::Approx(std::sqrt(32.0) * 0.04).epsilon(1e-12));

  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.noise_scale(), std::invalid_argument);
}

TEST_CASE("sensitivity oracle: zero for f == h, member-only dependence") {
  const auto sq = core::BoundedLoss::clamped_squared(1.0);
  const auto d = core::Dataset::univariate({0.0, 1.0, 0.0, 1.0, 0.0, 1.0},
                                           {0.0, 0.5, 1.0, 0.0, 0.5, 1.0});
  const auto g = core::Group::interval_group(0, -0.1, 0.5);
  const auto f = [](std::span<const double>) { return 0.25; };

  std::vector<dp::Record> universe;
  for (const double x : {0.0, 1.0}) {
    for (const double y : {0.0, 0.5, 1.0}) {
      universe.push_back({{x}, y});
    }
  }

  CHECK(dp::query_sensitivity_oracle(d, f, f, sq, g, universe) == 0.0);

  // replacing a non-member with another non-member leaves the query alone
  const auto h = [](std::span<const double>) { return 0.75; };
  const double base = core::weighted_gap(d, f, h, sq, g);
  const auto swapped = d.with_record(1, std::vector<double>{1.0}, 0.9);
  CHECK(core::weighted_gap(swapped, f, h, sq, g) == base);

  // randomized slice of the exhaustive n=6 check stays within 4/n
  util::Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> xs(6), ys(6);
    for (int i = 0; i < 6; ++i) {
      xs[static_cast<std::size_t>(i)] = rng.below(2) ? 1.0 : 0.0;
      ys[static_cast<std::size_t>(i)] = 0.5 * static_cast<double>(rng.below(3));
    }
    const auto data = core::Dataset::univariate(std::move(xs), std::move(ys));
    const auto h2 = [](std::span<const double>) { return 1.0; };
    const double sens =
        dp::query_sensitivity_oracle(data, f, h2, sq, g, universe);
    CHECK(sens <= 4.0 / 6.0 + 1e-15);
  }
}

namespace {

// Toy mechanism for audit tests: two noisy-threshold bits on the label mean.
dp::Transcript toy_mechanism(const core::Dataset& d, std::uint64_t seed) {
  LaplaceSampler s(seed, 0.5);
  double mean = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) mean += d.y(i);
  mean /= static_cast<double>(d.size());
  dp::Transcript t;
  t.push_back(mean + s.sample() >= 0.5);
  t.push_back(mean + s.sample() >= 0.25);
  return t;
}

}  // namespace

TEST_CASE("privacy audit: neighbors, sure events, identical data") {
  const auto d = core::Dataset::univariate({0.1, 0.2, 0.3, 0.4},
                                           {0.0, 1.0, 0.0, 1.0});
  const auto d_same = d;
  const auto d_onediff = d.with_record(2, std::vector<double>{0.3}, 1.0);
  const auto d_twodiff =
      d_onediff.with_record(3, std::vector<double>{0.3}, 0.0);

  CHECK(dp::are_neighbors(d, d_same));
  CHECK(dp::are_neighbors(d, d_onediff));
  CHECK(!dp::are_neighbors(d, d_twodiff));

  dp::AuditEvent sure;
  sure.name = "any";
  sure.predicate = [](const dp::Transcript&) { return true; };

  CHECK_THROWS_AS(
      dp::empirical_privacy_audit(toy_mechanism, d, d_twodiff, sure, 1000, 7),
      std::invalid_argument);

  // sure event: probability 1 under both, ratio exactly 1
  const auto res =
      dp::empirical_privacy_audit(toy_mechanism, d, d_onediff, sure, 2000, 7);
  CHECK(res.p_d == 1.0);
  CHECK(res.p_dprime == 1.0);
  CHECK(res.ln_ratio == 0.0);
  CHECK(res.ln_ratio_conservative == 0.0);

  // identical datasets: identical seeded transcripts, interval contains 0
  dp::AuditEvent first_top;
  first_top.name = "first-top";
  first_top.predicate = [](const dp::Transcript& t) {
    return !t.empty() && t.front();
  };
  const auto res2 = dp::empirical_privacy_audit(toy_mechanism, d, d_same,
                                                first_top, 5000, 11);
  CHECK(res2.p_d == res2.p_dprime);
  CHECK(res2.ln_ratio == 0.0);
  CHECK(res2.ln_ratio_conservative == 0.0);
  CHECK(res2.lo_d <= res2.p_d);
  CHECK(res2.hi_d >= res2.p_d);
}

TEST_CASE("prefix event harvesting") {
  const auto d = core::Dataset::univariate({0.1, 0.9}, {0.4, 0.6});
  const auto events = dp::collect_prefix_events(toy_mechanism, d, 10, 5, 4, 16);
  CHECK(!events.empty());
  // every harvested event must hold on at least one reference transcript
  for (const auto& e : events) {
    bool hit = false;
    for (std::uint64_t s = 5; s < 15 && !hit; ++s) {
      hit = e.predicate(toy_mechanism(d, s));
    }
    CHECK(hit);
  }
}
