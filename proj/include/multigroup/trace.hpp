#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace multigroup::core {

// One outer-loop round: either an accepted update or the terminal sweep.
struct IterationRecord {
  std::size_t iteration = 0;
  bool accepted = false;
  int group_id = -1;
  int hyp_id = -1;
  double eta = 1.0;
  double statistic = 0.0;        // un-noised acceptance statistic of the chosen
                                 // pair; for a terminal round, the sweep max
  double query_noise = 0.0;      // mu drawn for the chosen pair
  double threshold_noise = 0.0;  // xi in effect during the round
  double loss_before = 0.0;      // L_n(f) entering the round
  double loss_after = 0.0;       // L_n(f) leaving the round
  std::size_t pairs_examined = 0;
};

// Per-run log. num_updates always equals the number of accepted iterations.
// The terminal sweep is kept in full; the post-run certificates need every
// statistic and noise realized in it.
struct RunTrace {
  std::string method;
  double alpha = 0.0;      // initial empirical loss min_h L_n(h)
  std::size_t num_updates = 0;
  bool completed = false;  // ended with a full no-update sweep

  std::vector<IterationRecord> iterations;

  // Enumeration order over non-empty (group id, hypothesis id) pairs; the
  // final_* vectors are aligned with it.
  std::vector<std::pair<int, int>> pair_order;
  std::vector<double> final_statistics;
  std::vector<double> final_query_noises;
  double final_threshold_noise = 0.0;  // xi_B

  // Config echo for certificates and CSV output.
  double lambda = 0.0;
  double sigma = 0.0;
  double eta = 1.0;
  std::uint64_t seed = 0;
  double learning_rate = 0.0;      // sleeping expert
  std::size_t expert_samples = 0;  // sleeping expert
};

}  // namespace multigroup::core
