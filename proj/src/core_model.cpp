#include "rdsym/core_model.hpp"

#include <sstream>

#include "rdsym/error.hpp"

namespace rdsym {

namespace {

void require_admissible_exponent(double e, const char* name) {
  if (e == -1.0) {
    std::ostringstream msg;
    msg << "exponent " << name << " = -1 is excluded: the substitution needs " << name
        << " + 1 != 0";
    throw ConfigError(msg.str());
  }
}

// Re-throws power errors with the jet location attached.
template <class Fn>
auto at_point(const JetPoint& p, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    std::ostringstream msg;
    msg << e.what() << " at (t, x) = (" << p.t << ", " << p.x << ")";
    throw DomainError(msg.str(), p.t, p.x);
  }
}

}  // namespace

void RDSystemOriginal::validate() const {
  require_admissible_exponent(k, "k");
  require_admissible_exponent(l, "l");
}

FieldJet power_of(const FieldJet& base, double p) {
  if (p == 1.0) return base;
  if (p == 0.0) return {1.0, 0.0, 0.0, 0.0};
  const double b = base.value;
  const double d1 = p * real_power(b, p - 1.0);
  FieldJet out;
  out.value = real_power(b, p);
  out.t = d1 * base.t;
  out.x = d1 * base.x;
  out.xx = d1 * base.xx;
  if (base.x != 0.0) out.xx += p * (p - 1.0) * real_power(b, p - 2.0) * base.x * base.x;
  return out;
}

RDSystemTransformed transform_to_uv(const RDSystemOriginal& sys) {
  sys.validate();
  const double k = sys.k;
  const double l = sys.l;
  const double pu = 1.0 / (k + 1.0);
  const double pv = 1.0 / (l + 1.0);

  RDSystemTransformed out;
  out.m = -k / (k + 1.0);
  out.n = -l / (l + 1.0);

  auto make = [&](const BivariateFunction& fn, double factor) {
    auto value = [fn, factor, pu, pv](double u, double v) {
      return -factor * fn(real_power(u, pu), real_power(v, pv));
    };
    if (!fn.analytic()) return BivariateFunction::with_finite_differences(value);
    auto grad = [fn, factor, pu, pv](double u, double v) {
      const auto g = fn.gradient(real_power(u, pu), real_power(v, pv));
      const double dU_du = pu * real_power(u, pu - 1.0);
      const double dV_dv = pv * real_power(v, pv - 1.0);
      return std::array<double, 2>{-factor * g[0] * dU_du, -factor * g[1] * dV_dv};
    };
    return BivariateFunction(value, grad);
  };
  out.C1 = make(sys.F, k + 1.0);
  out.C2 = make(sys.G, l + 1.0);
  return out;
}

RDSystemOriginal transform_to_UV(const RDSystemTransformed& sys) {
  if (sys.m == -1.0 || sys.n == -1.0) throw ConfigError("exponents m = -1 or n = -1 are excluded");
  RDSystemOriginal out;
  out.k = -sys.m / (sys.m + 1.0);
  out.l = -sys.n / (sys.n + 1.0);
  const double k = out.k;
  const double l = out.l;

  auto make = [&](const BivariateFunction& fn, double factor) {
    auto value = [fn, factor, k, l](double U, double V) {
      return -fn(real_power(U, k + 1.0), real_power(V, l + 1.0)) / factor;
    };
    if (!fn.analytic()) return BivariateFunction::with_finite_differences(value);
    auto grad = [fn, factor, k, l](double U, double V) {
      const auto g = fn.gradient(real_power(U, k + 1.0), real_power(V, l + 1.0));
      return std::array<double, 2>{-g[0] * (k + 1.0) * real_power(U, k) / factor,
                                   -g[1] * (l + 1.0) * real_power(V, l) / factor};
    };
    return BivariateFunction(value, grad);
  };
  out.F = make(sys.C1, k + 1.0);
  out.G = make(sys.C2, l + 1.0);
  return out;
}

JetPoint map_jet_to_uv(const JetPoint& p, double k, double l) {
  return at_point(p, [&] {
    JetPoint out = p;
    out.u = power_of(p.u, k + 1.0);
    out.v = power_of(p.v, l + 1.0);
    return out;
  });
}

ResidualPair original_residual(const RDSystemOriginal& sys, const JetPoint& p) {
  return at_point(p, [&] {
    auto component = [](const FieldJet& w, double power, double reaction) {
      double r = w.t - real_power(w.value, power) * w.xx - reaction;
      if (power != 0.0 && w.x != 0.0) r -= power * real_power(w.value, power - 1.0) * w.x * w.x;
      return r;
    };
    const double U = p.u.value;
    const double V = p.v.value;
    return ResidualPair{component(p.u, sys.k, sys.F(U, V)), component(p.v, sys.l, sys.G(U, V))};
  });
}

ResidualPair transformed_residual(const RDSystemTransformed& sys, const JetPoint& p) {
  return at_point(p, [&] {
    const double u = p.u.value;
    const double v = p.v.value;
    return ResidualPair{p.u.xx - real_power(u, sys.m) * p.u.t - sys.C1(u, v),
                        p.v.xx - real_power(v, sys.n) * p.v.t - sys.C2(u, v)};
  });
}

}  // namespace rdsym
