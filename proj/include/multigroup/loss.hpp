#pragma once

#include <string>

namespace multigroup::core {

// Loss on (prediction, label), clamped into [0,1]. Squared and absolute
// losses carry a scale so that larger target ranges still map into the
// unit interval; zero-one thresholds both sides at 0.5.
class BoundedLoss {
 public:
  enum class Kind { ClampedSquared, ClampedAbsolute, ZeroOne };

  static BoundedLoss clamped_squared(double scale = 1.0);
  static BoundedLoss clamped_absolute(double scale = 1.0);
  static BoundedLoss zero_one();
  // names: "squared", "absolute", "zero_one"
  static BoundedLoss from_name(const std::string& name, double scale = 1.0);

  double eval(double z, double y) const;

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  std::string name() const;

 private:
  BoundedLoss(Kind kind, double scale);
  Kind kind_;
  double scale_;
};

}  // namespace multigroup::core
