#include "rdsym/profile.hpp"

#include <sstream>

#include "rdsym/error.hpp"

namespace rdsym {

Jet1 Profile::operator()(double x) const {
  if (!fn_) throw ConfigError("profile has no evaluator");
  const double slack = 1e-12 * std::max(1.0, std::abs(x));
  if (x < begin_ - slack || x > end_ + slack) {
    std::ostringstream msg;
    msg << "x = " << x << " lies outside the profile span [" << begin_ << ", " << end_ << "]";
    throw DomainError(msg.str(), std::nullopt, x);
  }
  return fn_(x);
}

}  // namespace rdsym
