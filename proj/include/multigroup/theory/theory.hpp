#pragma once

#include <cstddef>
#include <string>

#include "multigroup/learners/config.hpp"
#include "multigroup/trace.hpp"

namespace multigroup::theory {

struct BoundWidthResult {
  double width = 0.0;
  bool vacuous = false;  // width >= 1: no information about a [0,1] loss
};

// Finite-class uniform-convergence half-width for one group:
//   9 * sqrt((2 ln(|G||H|) + ln(8/delta)) / member_count)
// Returned unclamped; the flag marks vacuous widths.
BoundWidthResult bound_width(std::size_t n, std::size_t member_count,
                             std::size_t num_groups, std::size_t num_hyps,
                             double delta);

// Analysis-recommended parameters. `lambda` carries the (ln n)^{2/5}
// factor of the expanded expression; `lambda_simple` is the bare
// 16*sqrt(32)*epsilon^{2/3} form.
struct TheoryParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double sigma = 0.0;
  double lambda_simple = 0.0;
  // Excess-risk rate, a dimensionless multiplier of 1/P_n(g); hidden
  // constants are not estimated.
  double envelope = 0.0;
  std::string provenance;
};

// epsilon = n^{-3/5} (ln(4GH/b) sqrt(ln(2nGH/b)))^{3/5},
// delta = b / (2nGH), sigma = 4 sqrt(32 ln(1/delta)) / (n epsilon).
// Requires n >= 2, beta in (0,1). Guarantees epsilon >= 1/n and
// lambda*epsilon >= 1/n on the whole domain.
TheoryParams recipe_shaky(std::size_t n, std::size_t num_groups,
                          std::size_t num_hyps, double beta);

struct GroupPrependParams {
  double lambda = 0.0;
  // Rate multiplier of 1/sqrt(P_n(g)); constants suppressed.
  double envelope = 0.0;
  std::string provenance;
};

// lambda = n^{-1/3} ln(8GH/delta)^{1/3}; requires n >= 2, delta in (0,1).
GroupPrependParams recipe_group_prepend(std::size_t n, std::size_t num_groups,
                                        std::size_t num_hyps, double delta);

// Post-run certificate tying a completed trace to the update-count and
// stopping-slack guarantees.
struct CertificateReport {
  double alpha = 0.0;
  std::size_t num_updates = 0;
  double lambda = 0.0;
  double sigma = 0.0;

  // (i) every threshold noise and accepted-update noise was < lambda/4 in
  // magnitude; when that held, the update count must obey ceil(2a/l).
  bool noise_condition = false;
  double max_relevant_noise = 0.0;
  std::size_t update_cap = 0;  // ceil(2*alpha/lambda)
  bool update_cap_ok = false;

  // sigma = 0 runs additionally satisfy the deterministic cap ceil(1/lambda).
  std::size_t deterministic_cap = 0;
  bool deterministic_cap_ok = false;

  // (ii) realized extremes of the terminal sweep.
  double a = 0.0;     // max over the final sweep of -mu
  double xi_b = 0.0;  // threshold noise in effect during the final sweep

  // (iii) realized stopping slack max_(g,h) statistic against
  // lambda + a + xi_B; forced by the terminal sweep, checked exactly.
  double stopping_slack = 0.0;
  double slack_bound = 0.0;
  bool slack_ok = false;
};

// Throws std::invalid_argument("incomplete trace") unless the trace ended
// with a full no-update sweep.
CertificateReport certify_trace(const core::RunTrace& trace,
                                const learners::LearnerConfig& config);

std::string format_report(const CertificateReport& r);

}  // namespace multigroup::theory
