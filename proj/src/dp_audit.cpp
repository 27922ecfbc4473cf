#include "multigroup/dp/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace multigroup::dp {

namespace {

std::string prefix_name(const Transcript& p) {
  std::string s = "prefix:";
  for (bool b : p) s += b ? 'T' : '.';
  return s;
}

struct Wilson {
  double lo, hi;
};

Wilson wilson_interval(std::size_t successes, std::size_t trials, double z) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double safe_ratio_log(double num, double den) {
  if (num <= 0.0 && den <= 0.0) return 0.0;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  if (num <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(num / den);
}

}  // namespace

AuditEvent AuditEvent::prefix(const Transcript& prefix) {
  AuditEvent e;
  e.name = prefix_name(prefix);
  e.predicate = [prefix](const Transcript& t) {
    if (t.size() < prefix.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), t.begin());
  };
  return e;
}

bool are_neighbors(const core::Dataset& a, const core::Dataset& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool same = a.y(i) == b.y(i);
    for (std::size_t k = 0; same && k < a.dim(); ++k) {
      same = a.x(i)[k] == b.x(i)[k];
    }
    if (!same && ++diff > 1) return false;
  }
  return true;
}

std::vector<AuditResult> empirical_privacy_audit(
    const MechanismRunner& runner, const core::Dataset& d,
    const core::Dataset& dprime, const std::vector<AuditEvent>& events,
    std::size_t trials, std::uint64_t base_seed, double z) {
  if (!are_neighbors(d, dprime)) {
    throw std::invalid_argument("datasets are not neighbors");
  }
  if (events.empty()) throw std::invalid_argument("no audit events");

  const std::size_t m = events.size();
  std::vector<std::size_t> hits_d(m, 0), hits_dp(m, 0);

  // Trials are independent; each carries its own derived seed, so the
  // reduction order cannot change the counts.
#pragma omp parallel
  {
    std::vector<std::size_t> local_d(m, 0), local_dp(m, 0);
    const auto t_end = static_cast<std::ptrdiff_t>(trials);
#pragma omp for nowait schedule(static)
    for (std::ptrdiff_t t = 0; t < t_end; ++t) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(t);
      const Transcript td = runner(d, seed);
      const Transcript tdp = runner(dprime, seed);
      for (std::size_t e = 0; e < m; ++e) {
        if (events[e].predicate(td)) ++local_d[e];
        if (events[e].predicate(tdp)) ++local_dp[e];
      }
    }
#pragma omp critical
    for (std::size_t e = 0; e < m; ++e) {
      hits_d[e] += local_d[e];
      hits_dp[e] += local_dp[e];
    }
  }

  std::vector<AuditResult> out(m);
  for (std::size_t e = 0; e < m; ++e) {
    AuditResult& r = out[e];
    r.event = events[e].name;
    r.trials = trials;
    r.p_d = static_cast<double>(hits_d[e]) / static_cast<double>(trials);
    r.p_dprime = static_cast<double>(hits_dp[e]) / static_cast<double>(trials);
    const Wilson wd = wilson_interval(hits_d[e], trials, z);
    const Wilson wdp = wilson_interval(hits_dp[e], trials, z);
    r.lo_d = wd.lo;
    r.hi_d = wd.hi;
    r.lo_dprime = wdp.lo;
    r.hi_dprime = wdp.hi;
    r.ln_ratio = std::max(safe_ratio_log(r.p_d, r.p_dprime),
                          safe_ratio_log(r.p_dprime, r.p_d));
    // Smallest ratio any (p, p') inside the intervals could produce.
    const double a = safe_ratio_log(wd.lo, wdp.hi);
    const double b = safe_ratio_log(wdp.lo, wd.hi);
    r.ln_ratio_conservative = std::max({a, b, 0.0});
  }
  return out;
}

AuditResult empirical_privacy_audit(const MechanismRunner& runner,
                                    const core::Dataset& d,
                                    const core::Dataset& dprime,
                                    const AuditEvent& event,
                                    std::size_t trials,
                                    std::uint64_t base_seed, double z) {
  return empirical_privacy_audit(runner, d, dprime,
                                 std::vector<AuditEvent>{event}, trials,
                                 base_seed, z)
      .front();
}

std::vector<AuditEvent> collect_prefix_events(const MechanismRunner& runner,
                                              const core::Dataset& d,
                                              std::size_t reference_runs,
                                              std::uint64_t seed,
                                              std::size_t max_len,
                                              std::size_t max_events) {
  std::set<Transcript> prefixes;
  for (std::size_t r = 0; r < reference_runs; ++r) {
    const Transcript t = runner(d, seed + r);
    const std::size_t len = std::min(max_len, t.size());
    for (std::size_t k = 1; k <= len; ++k) {
      prefixes.insert(Transcript(t.begin(), t.begin() + k));
    }
  }
  std::vector<AuditEvent> events;
  for (const auto& p : prefixes) {
    if (events.size() >= max_events) break;
    events.push_back(AuditEvent::prefix(p));
  }
  if (events.empty()) {
    // Sure event; keeps the audit well-defined on silent mechanisms.
    AuditEvent e;
    e.name = "any";
    e.predicate = [](const Transcript&) { return true; };
    events.push_back(e);
  }
  return events;
}

}  // namespace multigroup::dp
