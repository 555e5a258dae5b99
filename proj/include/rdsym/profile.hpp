#pragma once

#include <functional>
#include <limits>
#include <utility>

namespace rdsym {

/// Value of a function of x with its first two derivatives.
struct Jet1 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A function of x with two derivatives, defined on [begin, end].
class Profile {
public:
  using Fn = std::function<Jet1(double)>;

  Profile() = default;
  explicit Profile(Fn fn, double begin = -std::numeric_limits<double>::infinity(),
                   double end = std::numeric_limits<double>::infinity())
      : fn_(std::move(fn)), begin_(begin), end_(end) {}

  static Profile constant(double c) {
    return Profile([c](double) { return Jet1{c, 0.0, 0.0}; });
  }

  /// Throws DomainError outside [begin, end].
  Jet1 operator()(double x) const;

  explicit operator bool() const { return static_cast<bool>(fn_); }
  double begin() const { return begin_; }
  double end() const { return end_; }
  bool bounded() const { return begin_ > -std::numeric_limits<double>::infinity() &&
                                end_ < std::numeric_limits<double>::infinity(); }

private:
  Fn fn_;
  double begin_ = -std::numeric_limits<double>::infinity();
  double end_ = std::numeric_limits<double>::infinity();
};

}  // namespace rdsym
