#include "rdsym/functions.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "rdsym/error.hpp"

namespace rdsym {

double real_power(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (exponent == 1.0) return base;
  if (base > 0.0) return std::pow(base, exponent);
  const bool integer_exponent = std::round(exponent) == exponent;
  if (base == 0.0) {
    if (exponent > 0.0) return 0.0;
  } else if (integer_exponent) {
    return std::pow(base, exponent);
  }
  std::ostringstream msg;
  msg << "power " << exponent << " of base " << base << " is not real-valued";
  throw DomainError(msg.str());
}

UnivariateFunction::UnivariateFunction(Fn value, Fn derivative, std::string description)
    : value_(std::move(value)), derivative_(std::move(derivative)),
      description_(std::move(description)) {}

double UnivariateFunction::derivative(double z) const {
  if (derivative_) return derivative_(z);
  const double h = fd_step(z);
  return (value_(z + h) - value_(z - h)) / (2.0 * h);
}

UnivariateFunction UnivariateFunction::zero() { return {}; }

UnivariateFunction UnivariateFunction::linear(double a, double b) {
  std::ostringstream d;
  d << "linear " << a << " " << b;
  return {[a, b](double z) { return a * z + b; }, [a](double) { return a; }, d.str()};
}

UnivariateFunction UnivariateFunction::reciprocal(double a, double b) {
  std::ostringstream d;
  d << "reciprocal " << a << " " << b;
  return {[a, b](double z) { return a + b / z; }, [b](double z) { return -b / (z * z); },
          d.str()};
}

UnivariateFunction UnivariateFunction::sine(double a, double b) {
  std::ostringstream d;
  d << "sine " << a << " " << b;
  return {[a, b](double z) { return a * std::sin(z) + b; },
          [a](double z) { return a * std::cos(z); }, d.str()};
}

BivariateFunction::BivariateFunction()
    : value_([](double, double) { return 0.0; }),
      gradient_([](double, double) { return std::array<double, 2>{0.0, 0.0}; }) {}

BivariateFunction::BivariateFunction(Fn value, GradFn gradient)
    : value_(std::move(value)), gradient_(std::move(gradient)) {}

BivariateFunction BivariateFunction::with_finite_differences(Fn value) {
  BivariateFunction fn;
  fn.value_ = std::move(value);
  fn.gradient_ = nullptr;
  return fn;
}

std::array<double, 2> BivariateFunction::gradient(double a, double b) const {
  if (gradient_) return gradient_(a, b);
  const double ha = fd_step(a);
  const double hb = fd_step(b);
  return {(value_(a + ha, b) - value_(a - ha, b)) / (2.0 * ha),
          (value_(a, b + hb) - value_(a, b - hb)) / (2.0 * hb)};
}

}  // namespace rdsym
