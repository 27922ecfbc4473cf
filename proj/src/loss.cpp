#include "multigroup/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace multigroup::core {

BoundedLoss::BoundedLoss(Kind kind, double scale) : kind_(kind), scale_(scale) {
  if (kind_ != Kind::ZeroOne && !(scale_ > 0.0)) {
    throw std::invalid_argument("loss scale must be positive");
  }
}

BoundedLoss BoundedLoss::clamped_squared(double scale) {
  return BoundedLoss(Kind::ClampedSquared, scale);
}

BoundedLoss BoundedLoss::clamped_absolute(double scale) {
  return BoundedLoss(Kind::ClampedAbsolute, scale);
}

BoundedLoss BoundedLoss::zero_one() { return BoundedLoss(Kind::ZeroOne, 1.0); }

BoundedLoss BoundedLoss::from_name(const std::string& name, double scale) {
  if (name == "squared") return clamped_squared(scale);
  if (name == "absolute") return clamped_absolute(scale);
  if (name == "zero_one") return zero_one();
  throw std::invalid_argument("unknown loss: " + name);
}

double BoundedLoss::eval(double z, double y) const {
  switch (kind_) {
    case Kind::ClampedSquared: {
      const double d = (z - y) / scale_;
      const double v = d * d;
      return v < 1.0 ? v : 1.0;
    }
    case Kind::ClampedAbsolute: {
      const double v = std::abs(z - y) / scale_;
      return v < 1.0 ? v : 1.0;
    }
    case Kind::ZeroOne:
      return (z > 0.5) != (y > 0.5) ? 1.0 : 0.0;
  }
  return 1.0;
}

std::string BoundedLoss::name() const {
  switch (kind_) {
    case Kind::ClampedSquared:
      return "squared";
    case Kind::ClampedAbsolute:
      return "absolute";
    case Kind::ZeroOne:
      return "zero_one";
  }
  return "?";
}

}  // namespace multigroup::core
