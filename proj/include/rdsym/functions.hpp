#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace rdsym {

/// Finite-difference step used whenever an analytic partial is missing.
inline double fd_step(double arg) { return 1e-6 * std::max(1.0, std::abs(arg)); }

/// base^exponent over the reals. A negative base is accepted only for integer
/// exponents; a zero base only for nonnegative exponents. Anything else throws
/// DomainError rather than picking a complex branch.
double real_power(double base, double exponent);

/// Scalar function of one argument with its first derivative.
class UnivariateFunction {
public:
  using Fn = std::function<double(double)>;

  UnivariateFunction() = default;
  UnivariateFunction(Fn value, Fn derivative, std::string description = "custom");

  double operator()(double z) const { return value_(z); }
  /// First derivative; central differences when no analytic derivative was given.
  double derivative(double z) const;
  bool analytic() const { return static_cast<bool>(derivative_); }
  const std::string& description() const { return description_; }

  static UnivariateFunction zero();
  /// a*z + b
  static UnivariateFunction linear(double a, double b);
  /// a + b/z
  static UnivariateFunction reciprocal(double a, double b);
  /// a*sin(z) + b
  static UnivariateFunction sine(double a, double b);

private:
  Fn value_ = [](double) { return 0.0; };
  Fn derivative_ = [](double) { return 0.0; };
  std::string description_ = "zero";
};

/// Scalar function of two arguments bundled with its first partials.
class BivariateFunction {
public:
  using Fn = std::function<double(double, double)>;
  using GradFn = std::function<std::array<double, 2>(double, double)>;

  BivariateFunction();
  BivariateFunction(Fn value, GradFn gradient);
  /// Partials fall back to central differences with step fd_step(arg).
  static BivariateFunction with_finite_differences(Fn value);

  double operator()(double a, double b) const { return value_(a, b); }
  std::array<double, 2> gradient(double a, double b) const;
  bool analytic() const { return static_cast<bool>(gradient_); }

private:
  Fn value_;
  GradFn gradient_;
};

}  // namespace rdsym
