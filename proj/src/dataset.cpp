#include "multigroup/dataset.hpp"

#include <stdexcept>

namespace multigroup::core {

Dataset::Dataset(std::vector<double> xs, std::vector<double> ys,
                 std::size_t dim)
    : xs_(std::move(xs)), ys_(std::move(ys)), dim_(dim) {
  if (ys_.empty()) throw std::invalid_argument("dataset must not be empty");
  if (dim_ == 0) throw std::invalid_argument("dataset dim must be >= 1");
  if (xs_.size() != ys_.size() * dim_) {
    throw std::invalid_argument("feature matrix shape mismatch");
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& xs,
                           const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("rows/labels mismatch");
  }
  const std::size_t dim = xs.front().size();
  std::vector<double> flat;
  flat.reserve(xs.size() * dim);
  for (const auto& row : xs) {
    if (row.size() != dim) {
      throw std::invalid_argument("all records must share one dimensionality");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Dataset(std::move(flat), ys, dim);
}

Dataset Dataset::univariate(std::vector<double> xs, std::vector<double> ys) {
  return Dataset(std::move(xs), std::move(ys), 1);
}

Dataset Dataset::with_record(std::size_t i, std::span<const double> x,
                             double y) const {
  if (i >= size()) throw std::out_of_range("record index");
  if (x.size() != dim_) throw std::invalid_argument("record dim mismatch");
  std::vector<double> xs = xs_;
  std::vector<double> ys = ys_;
  for (std::size_t k = 0; k < dim_; ++k) xs[i * dim_ + k] = x[k];
  ys[i] = y;
  return Dataset(std::move(xs), std::move(ys), dim_);
}

}  // namespace multigroup::core
