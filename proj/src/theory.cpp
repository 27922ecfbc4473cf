#include "multigroup/theory/theory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace multigroup::theory {

BoundWidthResult bound_width(std::size_t n, std::size_t member_count,
                             std::size_t num_groups, std::size_t num_hyps,
                             double delta) {
  if (member_count == 0) throw std::invalid_argument("empty group");
  if (n < 1 || member_count > n || num_groups < 1 || num_hyps < 1) {
    throw std::invalid_argument("bound_width: counts out of domain");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
  const double gh = static_cast<double>(num_groups) *
                    static_cast<double>(num_hyps);
  const double numer = 2.0 * std::log(gh) + std::log(8.0 / delta);
  const double width =
      9.0 * std::sqrt(numer / static_cast<double>(member_count));
  return {width, width >= 1.0};
}

TheoryParams recipe_shaky(std::size_t n, std::size_t num_groups,
                          std::size_t num_hyps, double beta) {
  if (n < 2 || num_groups < 1 || num_hyps < 1) {
    throw std::invalid_argument("recipe_shaky: counts out of domain");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0,1)");
  }
  const double nd = static_cast<double>(n);
  const double gh = static_cast<double>(num_groups) *
                    static_cast<double>(num_hyps);

  TheoryParams p;
  p.provenance = "shaky";
  p.delta = beta / (2.0 * nd * gh);

  const double log_ghb = std::log(4.0 * gh / beta);
  const double log_inv_delta = std::log(2.0 * nd * gh / beta);  // ln(1/delta)
  const double k = log_ghb * std::sqrt(log_inv_delta);

  p.epsilon = std::pow(nd, -0.6) * std::pow(k, 0.6);
  p.lambda_simple = 16.0 * std::sqrt(32.0) * std::pow(p.epsilon, 2.0 / 3.0);
  p.lambda = 16.0 * std::sqrt(32.0) * std::pow(nd, -0.4) * std::pow(k, 0.4) *
             std::pow(std::log(nd), 0.4);
  p.sigma = 4.0 * std::sqrt(32.0 * log_inv_delta) / (nd * p.epsilon);
  p.envelope = std::pow(nd, -0.4) * std::log(nd) *
               std::pow(std::log(24.0 * gh / beta), 0.4) *
               std::pow(log_inv_delta, 0.2);
  return p;
}

GroupPrependParams recipe_group_prepend(std::size_t n, std::size_t num_groups,
                                        std::size_t num_hyps, double delta) {
  if (n < 2 || num_groups < 1 || num_hyps < 1) {
    throw std::invalid_argument("recipe_group_prepend: counts out of domain");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
  const double nd = static_cast<double>(n);
  const double gh = static_cast<double>(num_groups) *
                    static_cast<double>(num_hyps);
  GroupPrependParams p;
  p.provenance = "group_prepend";
  p.lambda = std::pow(nd, -1.0 / 3.0) *
             std::cbrt(std::log(8.0 * gh / delta));
  p.envelope = p.lambda;
  return p;
}

CertificateReport certify_trace(const core::RunTrace& trace,
                                const learners::LearnerConfig& config) {
  if (!trace.completed) throw std::invalid_argument("incomplete trace");

  CertificateReport r;
  r.alpha = trace.alpha;
  r.num_updates = trace.num_updates;
  r.lambda = config.lambda;
  r.sigma = trace.sigma;

  // Lemma-style noise condition: the threshold noises and the noises of
  // accepted updates are what drive the per-update loss decrease.
  double max_noise = 0.0;
  for (const auto& it : trace.iterations) {
    max_noise = std::max(max_noise, std::abs(it.threshold_noise));
    if (it.accepted) max_noise = std::max(max_noise, std::abs(it.query_noise));
  }
  max_noise = std::max(max_noise, std::abs(trace.final_threshold_noise));
  r.max_relevant_noise = max_noise;
  r.noise_condition = max_noise < config.lambda / 4.0;

  r.update_cap = static_cast<std::size_t>(
      std::ceil(2.0 * trace.alpha / config.lambda));
  r.update_cap_ok = trace.num_updates <= r.update_cap;

  r.deterministic_cap =
      static_cast<std::size_t>(std::ceil(1.0 / config.lambda));
  r.deterministic_cap_ok = trace.num_updates <= r.deterministic_cap;

  double a = 0.0;
  bool have = false;
  for (double mu : trace.final_query_noises) {
    const double neg = -mu;
    if (!have || neg > a) {
      a = neg;
      have = true;
    }
  }
  r.a = have ? a : 0.0;
  r.xi_b = trace.final_threshold_noise;

  double slack = 0.0;
  for (double s : trace.final_statistics) slack = std::max(slack, s);
  r.stopping_slack = slack;
  r.slack_bound = config.lambda + r.a + r.xi_b;
  r.slack_ok = r.stopping_slack <= r.slack_bound;
  return r;
}

std::string format_report(const CertificateReport& r) {
  std::ostringstream os;
  os << "alpha (initial empirical loss): " << r.alpha << "\n"
     << "updates: " << r.num_updates << "\n"
     << "lambda: " << r.lambda << "  sigma: " << r.sigma << "\n"
     << "noise condition |xi|,|mu_accepted| < lambda/4: "
     << (r.noise_condition ? "yes" : "no")
     << "  (max relevant noise " << r.max_relevant_noise << ")\n"
     << "update cap ceil(2*alpha/lambda) = " << r.update_cap << ": "
     << (r.update_cap_ok ? "satisfied" : "VIOLATED") << "\n"
     << "deterministic cap ceil(1/lambda) = " << r.deterministic_cap << ": "
     << (r.deterministic_cap_ok ? "satisfied" : "VIOLATED") << "\n"
     << "final sweep a = max(-mu): " << r.a << "  xi_B: " << r.xi_b << "\n"
     << "stopping slack: " << r.stopping_slack
     << "  bound lambda + a + xi_B: " << r.slack_bound << ": "
     << (r.slack_ok ? "satisfied" : "VIOLATED") << "\n";
  return os.str();
}

}  // namespace multigroup::theory
