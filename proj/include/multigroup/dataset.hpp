#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace multigroup::core {

// Indexed sample of (x, y) records. Record order is fixed at construction
// and drives all index-based tie-breaking downstream.
class Dataset {
 public:
  // xs is row-major, n * dim entries.
  Dataset(std::vector<double> xs, std::vector<double> ys, std::size_t dim);

  static Dataset from_rows(const std::vector<std::vector<double>>& xs,
                           const std::vector<double>& ys);

  // 1-D convenience: one feature per record.
  static Dataset univariate(std::vector<double> xs, std::vector<double> ys);

  std::size_t size() const { return ys_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> x(std::size_t i) const {
    return {xs_.data() + i * dim_, dim_};
  }
  double y(std::size_t i) const { return ys_[i]; }
  std::span<const double> ys() const { return ys_; }

  // Copy with record i replaced; used by the sensitivity oracle and the
  // privacy audit to build neighboring datasets.
  Dataset with_record(std::size_t i, std::span<const double> x, double y) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::size_t dim_ = 0;
};

}  // namespace multigroup::core
