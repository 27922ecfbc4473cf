#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multigroup/dataset.hpp"

namespace multigroup::dp {

// Mechanism output as seen by the audit: the answer sequence only.
using Transcript = std::vector<bool>;  // true = threshold crossed

using MechanismRunner =
    std::function<Transcript(const core::Dataset&, std::uint64_t seed)>;
using TranscriptEvent = std::function<bool(const Transcript&)>;

struct AuditEvent {
  std::string name;
  TranscriptEvent predicate;

  // Event "transcript starts with `prefix`".
  static AuditEvent prefix(const Transcript& prefix);
};

struct AuditResult {
  std::string event;
  double p_d = 0.0;        // event frequency under D
  double p_dprime = 0.0;   // event frequency under D'
  double lo_d = 0.0, hi_d = 0.0;          // Wilson interval under D
  double lo_dprime = 0.0, hi_dprime = 0.0;  // Wilson interval under D'
  // max(ln(p_d/p_d'), ln(p_d'/p_d)) at the point estimates.
  double ln_ratio = 0.0;
  // Smallest ratio consistent with the two intervals (0 when they allow
  // equality). The gap ln_ratio - ln_ratio_conservative is the audit slack.
  double ln_ratio_conservative = 0.0;
  std::size_t trials = 0;
};

// Monte-Carlo comparison of event frequencies on neighboring datasets.
// Trial t runs the mechanism with seed base_seed + t on both datasets.
// Advisory: an estimate, not a proof. Throws when the datasets differ in
// more than one record (identical datasets are allowed; Definition-style
// neighbors differ in at most one).
std::vector<AuditResult> empirical_privacy_audit(
    const MechanismRunner& runner, const core::Dataset& d,
    const core::Dataset& dprime, const std::vector<AuditEvent>& events,
    std::size_t trials, std::uint64_t base_seed, double z = 1.96);

AuditResult empirical_privacy_audit(const MechanismRunner& runner,
                                    const core::Dataset& d,
                                    const core::Dataset& dprime,
                                    const AuditEvent& event,
                                    std::size_t trials,
                                    std::uint64_t base_seed, double z = 1.96);

// Prefix-equality events harvested from reference runs on D: all distinct
// transcript prefixes (up to max_len, at most max_events), the measurable
// sets used in the sparse mechanism's privacy decomposition.
std::vector<AuditEvent> collect_prefix_events(const MechanismRunner& runner,
                                              const core::Dataset& d,
                                              std::size_t reference_runs,
                                              std::uint64_t seed,
                                              std::size_t max_len,
                                              std::size_t max_events);

// True when the datasets differ in at most one record.
bool are_neighbors(const core::Dataset& a, const core::Dataset& b);

}  // namespace multigroup::dp
