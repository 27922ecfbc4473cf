#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace multigroup::learners {

enum class Method {
  Prepend,
  GroupPrepend,
  ShakyPrepend,
  FractionalPrepend,
  FractionalGroupPrepend,
  FractionalShakyPrepend,
  SleepingExpert,
};

Method method_from_name(const std::string& name);
std::string method_name(Method m);
bool is_fractional(Method m);

struct LearnerConfig {
  double lambda = 0.05;  // error bound / threshold
  double sigma = 0.0;    // noise scale (shaky); 0 means the noise-off skeleton
  double eta = 1.0;      // step size (fractional variants)

  // Privacy parameters; when both are positive the fractional shaky variant
  // derives sigma = 4*sqrt(32 ln(1/delta)) / (n*epsilon) and ignores the
  // sigma field.
  double epsilon = 0.0;
  double delta = 0.0;

  // Maximum accepted updates; 0 picks the per-variant default
  // (10*ceil(1/lambda) for the noisy variants, a loose deterministic bound
  // otherwise). Exceeding it raises LearnerError with the partial trace.
  std::size_t max_iters = 0;

  std::uint64_t seed = 0;

  // Sleeping expert only.
  double learning_rate = 1.0;
  std::size_t expert_samples = 64;  // sampled per-step rules kept for prediction
  bool classification = false;      // majority vote instead of averaging
};

}  // namespace multigroup::learners
