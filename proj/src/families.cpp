#include "rdsym/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdsym/error.hpp"

namespace rdsym {

namespace {

[[noreturn]] void violated(int family, const std::string& restriction) {
  throw ConfigError("family " + std::to_string(family) + " restriction violated: " + restriction);
}

void validate_p(const FamilyParams& fp) {
  if (!fp.p) violated(fp.family_id, "p must be supplied (p_xx = p^2 + lambda p, p != 0)");
  std::vector<double> probes;
  if (fp.p.bounded()) {
    for (int i = 0; i <= 8; ++i)
      probes.push_back(fp.p.begin() + (fp.p.end() - fp.p.begin()) * i / 8.0);
  } else {
    probes = {-1.0, -0.5, 0.0, 0.5, 1.0};
  }
  bool nonzero = false;
  for (double x : probes) {
    const Jet1 p = fp.p(x);
    nonzero = nonzero || p.value != 0.0 || p.d1 != 0.0;
    const double defect = p.d2 - p.value * p.value - fp.lambda * p.value;
    const double scale = std::max({1.0, p.value * p.value, std::abs(p.d2)});
    if (std::abs(defect) > 1e-8 * scale) violated(fp.family_id, "p_xx = p^2 + lambda p");
  }
  if (!nonzero) violated(fp.family_id, "p != 0");
}

bool nondegenerate_trichotomy(const FamilyParams& fp) {
  const auto sq = [](double a) { return a * a; };
  return sq(fp.lambda1) + sq(fp.lambda3) != 0.0 || sq(fp.lambda3) + sq(fp.k) != 0.0 ||
         sq(fp.lambda1) + sq(fp.l) != 0.0;
}

// Fractional power of an ansatz base; the (t, x) location is attached on failure.
FieldJet ansatz_power(const FieldJet& base, double p, double t, double x) {
  if (base.value <= 0.0 && std::round(p) != p) {
    std::ostringstream msg;
    msg << "ansatz base " << base.value << " is not positive at (t, x) = (" << t << ", " << x
        << ")";
    throw DomainError(msg.str(), t, x);
  }
  try {
    return power_of(base, p);
  } catch (const DomainError& e) {
    throw DomainError(e.what(), t, x);
  }
}

RDSystemOriginal family_system(const FamilyParams& fp) {
  const double k = fp.k, l = fp.l;
  const UnivariateFunction f = fp.f, g = fp.g;
  RDSystemOriginal sys;
  sys.k = k;
  sys.l = l;
  sys.label = "family " + std::to_string(fp.family_id);

  switch (fp.family_id) {
    case 1: {
      const double lam = fp.lambda;
      sys.F = BivariateFunction(
          [=](double U, double) { return f(real_power(U, k + 1.0)); },
          [=](double U, double) {
            return std::array<double, 2>{
                f.derivative(real_power(U, k + 1.0)) * (k + 1.0) * real_power(U, k), 0.0};
          });
      sys.G = BivariateFunction(
          [=](double U, double V) {
            return -2.0 * lam * real_power(V, 0.5) + g(real_power(U, k + 1.0));
          },
          [=](double U, double V) {
            return std::array<double, 2>{
                g.derivative(real_power(U, k + 1.0)) * (k + 1.0) * real_power(U, k),
                -lam * real_power(V, -0.5)};
          });
      break;
    }
    case 2: {
      const double l1 = fp.lambda1, l2 = fp.lambda2;
      const double alpha = coupling_exponent(fp);
      auto s = [=](double U, double V) {
        return real_power(U, k + 1.0) - alpha * real_power(V, l + 1.0);
      };
      sys.F = BivariateFunction(
          [=](double U, double V) { return l1 * real_power(U, -k) + f(s(U, V)); },
          [=](double U, double V) {
            const double fd = f.derivative(s(U, V));
            return std::array<double, 2>{
                -k * l1 * real_power(U, -k - 1.0) + fd * (k + 1.0) * real_power(U, k),
                -fd * alpha * (l + 1.0) * real_power(V, l)};
          });
      sys.G = BivariateFunction(
          [=](double U, double V) { return l2 * real_power(V, -l) + g(s(U, V)); },
          [=](double U, double V) {
            const double gd = g.derivative(s(U, V));
            return std::array<double, 2>{
                gd * (k + 1.0) * real_power(U, k),
                -l * l2 * real_power(V, -l - 1.0) - gd * alpha * (l + 1.0) * real_power(V, l)};
          });
      break;
    }
    case 3: {
      const double lam = fp.lambda;
      auto s = [](double U, double V) { return real_power(U, 0.5) - real_power(V, 0.5); };
      sys.F = BivariateFunction(
          [=](double U, double V) { return -2.0 * lam * real_power(U, 0.5) + f(s(U, V)); },
          [=](double U, double V) {
            const double fd = f.derivative(s(U, V));
            return std::array<double, 2>{(fd * 0.5 - lam) * real_power(U, -0.5),
                                         -fd * 0.5 * real_power(V, -0.5)};
          });
      sys.G = BivariateFunction(
          [=](double U, double V) { return -2.0 * lam * real_power(V, 0.5) + g(s(U, V)); },
          [=](double U, double V) {
            const double gd = g.derivative(s(U, V));
            return std::array<double, 2>{gd * 0.5 * real_power(U, -0.5),
                                         (-lam - gd * 0.5) * real_power(V, -0.5)};
          });
      break;
    }
    case 4: {
      const double l1 = fp.lambda1, l2 = fp.lambda2, l3 = fp.lambda3;
      const double c = coupling_exponent(fp);
      auto w_of = [=](double V) {
        const double w = real_power(V, l + 1.0) - l3;
        if (w <= 0.0) throw DomainError("V^{l+1} - lambda3 must be positive in family 4");
        return w;
      };
      // omega = exp(U^{k+1}) / w^c, evaluated in log form
      auto omega = [=](double U, double V) {
        return std::exp(real_power(U, k + 1.0) - c * std::log(w_of(V)));
      };
      sys.F = BivariateFunction(
          [=](double U, double V) { return l1 * real_power(U, -k) + f(omega(U, V)); },
          [=](double U, double V) {
            const double om = omega(U, V);
            const double fd = f.derivative(om);
            const double om_U = om * (k + 1.0) * real_power(U, k);
            const double om_V = -om * c * (l + 1.0) * real_power(V, l) / w_of(V);
            return std::array<double, 2>{-k * l1 * real_power(U, -k - 1.0) + fd * om_U,
                                         fd * om_V};
          });
      sys.G = BivariateFunction(
          [=](double U, double V) {
            return w_of(V) * (g(omega(U, V)) + l2 * real_power(V, -l));
          },
          [=](double U, double V) {
            const double w = w_of(V);
            const double om = omega(U, V);
            const double gd = g.derivative(om);
            const double om_U = om * (k + 1.0) * real_power(U, k);
            const double om_V = -om * c * (l + 1.0) * real_power(V, l) / w;
            return std::array<double, 2>{
                w * gd * om_U, (l + 1.0) * real_power(V, l) * (g(om) + l2 * real_power(V, -l)) +
                                   w * (gd * om_V - l * l2 * real_power(V, -l - 1.0))};
          });
      break;
    }
    case 5: {
      const double l1 = fp.lambda1, l2 = fp.lambda2, l3 = fp.lambda3, l4 = fp.lambda4;
      const double c = coupling_exponent(fp);
      auto z_of = [=](double U) { return real_power(U, k + 1.0) - l1; };
      auto w_of = [=](double V) { return real_power(V, l + 1.0) - l3; };
      auto omega = [=](double U, double V) { return z_of(U) * real_power(w_of(V), -c); };
      auto om_U = [=](double U, double V) {
        return (k + 1.0) * real_power(U, k) * real_power(w_of(V), -c);
      };
      auto om_V = [=](double U, double V) {
        return -c * z_of(U) * real_power(w_of(V), -c - 1.0) * (l + 1.0) * real_power(V, l);
      };
      sys.F = BivariateFunction(
          [=](double U, double V) { return z_of(U) * (f(omega(U, V)) + l2 * real_power(U, -k)); },
          [=](double U, double V) {
            const double om = omega(U, V);
            const double fd = f.derivative(om);
            const double z = z_of(U);
            return std::array<double, 2>{
                (k + 1.0) * real_power(U, k) * (f(om) + l2 * real_power(U, -k)) +
                    z * (fd * om_U(U, V) - k * l2 * real_power(U, -k - 1.0)),
                z * fd * om_V(U, V)};
          });
      sys.G = BivariateFunction(
          [=](double U, double V) { return w_of(V) * (g(omega(U, V)) + l4 * real_power(V, -l)); },
          [=](double U, double V) {
            const double om = omega(U, V);
            const double gd = g.derivative(om);
            const double w = w_of(V);
            return std::array<double, 2>{
                w * gd * om_U(U, V),
                (l + 1.0) * real_power(V, l) * (g(om) + l4 * real_power(V, -l)) +
                    w * (gd * om_V(U, V) - l * l4 * real_power(V, -l - 1.0))};
          });
      break;
    }
    default:
      throw ConfigError("family_id must be one of 1..5");
  }
  if (!f.analytic() || !g.analytic()) {
    sys.F = BivariateFunction::with_finite_differences([F = sys.F](double U, double V) {
      return F(U, V);
    });
    sys.G = BivariateFunction::with_finite_differences([G = sys.G](double U, double V) {
      return G(U, V);
    });
  }
  return sys;
}

QOperator family_operator(const FamilyParams& fp) {
  const double k = fp.k, l = fp.l;
  switch (fp.family_id) {
    case 1:
      return QOperator([p = fp.p](const BasePoint& pt) {
        const Jet1 pj = p(pt.x);
        OperatorJet j;
        j.eta2.value = pj.value;
        j.eta2.x = pj.d1;
        j.eta2.xx = pj.d2;
        return j;
      });
    case 2: {
      const double e1 = fp.lambda1 * (k + 1.0), e2 = fp.lambda2 * (l + 1.0);
      return QOperator([=](const BasePoint&) {
        OperatorJet j;
        j.eta1.value = e1;
        j.eta2.value = e2;
        return j;
      });
    }
    case 3:
      return QOperator([p = fp.p](const BasePoint& pt) {
        const Jet1 pj = p(pt.x);
        OperatorJet j;
        j.eta1.value = j.eta2.value = pj.value;
        j.eta1.x = j.eta2.x = pj.d1;
        j.eta1.xx = j.eta2.xx = pj.d2;
        return j;
      });
    case 4: {
      const double e1 = fp.lambda1 * (k + 1.0), s2 = fp.lambda2 * (l + 1.0), l3 = fp.lambda3;
      return QOperator([=](const BasePoint& pt) {
        OperatorJet j;
        j.eta1.value = e1;
        j.eta2.value = s2 * (pt.v - l3);
        j.eta2.v = s2;
        return j;
      });
    }
    case 5: {
      const double s1 = fp.lambda2 * (k + 1.0), s2 = fp.lambda4 * (l + 1.0);
      const double l1 = fp.lambda1, l3 = fp.lambda3;
      return QOperator([=](const BasePoint& pt) {
        OperatorJet j;
        j.eta1.value = s1 * (pt.u - l1);
        j.eta1.u = s1;
        j.eta2.value = s2 * (pt.v - l3);
        j.eta2.v = s2;
        return j;
      });
    }
    default:
      throw ConfigError("family_id must be one of 1..5");
  }
}

}  // namespace

double coupling_exponent(const FamilyParams& fp) {
  switch (fp.family_id) {
    case 2:
    case 4:
      return fp.lambda1 * (fp.k + 1.0) / (fp.lambda2 * (fp.l + 1.0));
    case 5:
      return fp.lambda2 * (fp.k + 1.0) / (fp.lambda4 * (fp.l + 1.0));
    default:
      return 0.0;
  }
}

void validate_family(const FamilyParams& fp) {
  const int id = fp.family_id;
  if (id < 1 || id > 5) throw ConfigError("family_id must be one of 1..5");
  if (id == 1 && fp.l != -0.5) violated(id, "l = -1/2");
  if (id == 3 && (fp.k != -0.5 || fp.l != -0.5)) violated(id, "k = l = -1/2");
  if ((fp.k + 1.0) * (fp.l + 1.0) == 0.0) violated(id, "(k+1)(l+1) != 0");
  if (fp.k * fp.k + fp.l * fp.l == 0.0) violated(id, "k^2 + l^2 != 0");
  switch (id) {
    case 1:
    case 3:
      validate_p(fp);
      break;
    case 2:
      if (fp.lambda2 == 0.0) violated(id, "lambda2 != 0");
      if (fp.lambda1 * fp.lambda1 + fp.l * fp.l == 0.0) violated(id, "lambda1^2 + l^2 != 0");
      if (fp.alpha) {
        const double expected = coupling_exponent(fp);
        if (std::abs(*fp.alpha - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
          violated(id, "alpha = lambda1 (k+1) / (lambda2 (l+1))");
      }
      break;
    case 4:
      if (fp.lambda2 == 0.0) violated(id, "lambda2 != 0");
      if (!nondegenerate_trichotomy(fp))
        violated(id, "lambda1^2 + lambda3^2 != 0 or lambda3^2 + k^2 != 0 or lambda1^2 + l^2 != 0");
      break;
    case 5:
      if (fp.lambda2 * fp.lambda4 == 0.0) violated(id, "lambda2 lambda4 != 0");
      if (!nondegenerate_trichotomy(fp))
        violated(id, "lambda1^2 + lambda3^2 != 0 or lambda3^2 + k^2 != 0 or lambda1^2 + l^2 != 0");
      break;
  }
}

Family build_family(const FamilyParams& params) {
  validate_family(params);
  RDSystemOriginal sys = family_system(params);
  RDSystemTransformed tr = transform_to_uv(sys);
  return Family{params, std::move(sys), std::move(tr), family_operator(params)};
}

JetPoint ansatz_eval(const AnsatzProfile& a, double t, double x) {
  const FamilyParams& fp = a.params;
  const double k = fp.k, l = fp.l;
  const Jet1 phi = a.phi(x);
  const Jet1 psi = a.psi(x);

  FieldJet bu, bv;
  double pu = 1.0 / (k + 1.0), pv = 1.0 / (l + 1.0);
  switch (fp.family_id) {
    case 1: {
      const Jet1 p = fp.p(x);
      bu = {phi.value, 0.0, phi.d1, phi.d2};
      bv = {p.value * t + psi.value, p.value, p.d1 * t + psi.d1, p.d2 * t + psi.d2};
      break;
    }
    case 2: {
      const double su = fp.lambda1 * (k + 1.0), sv = fp.lambda2 * (l + 1.0);
      bu = {su * t + phi.value, su, phi.d1, phi.d2};
      bv = {sv * t + psi.value, sv, psi.d1, psi.d2};
      break;
    }
    case 3: {
      const Jet1 p = fp.p(x);
      bu = {p.value * t + phi.value, p.value, p.d1 * t + phi.d1, p.d2 * t + phi.d2};
      bv = {p.value * t + psi.value, p.value, p.d1 * t + psi.d1, p.d2 * t + psi.d2};
      break;
    }
    case 4: {
      const double su = fp.lambda1 * (k + 1.0), sv = fp.lambda2 * (l + 1.0);
      bu = {su * t + phi.value, su, phi.d1, phi.d2};
      const double e = std::exp(sv * t + psi.value);
      bv = {e + fp.lambda3, sv * e, e * psi.d1, e * (psi.d2 + psi.d1 * psi.d1)};
      break;
    }
    case 5: {
      const double su = fp.lambda2 * (k + 1.0), sv = fp.lambda4 * (l + 1.0);
      const double eu = std::exp(su * t), ev = std::exp(sv * t);
      bu = {phi.value * eu + fp.lambda1, su * phi.value * eu, phi.d1 * eu, phi.d2 * eu};
      bv = {psi.value * ev + fp.lambda3, sv * psi.value * ev, psi.d1 * ev, psi.d2 * ev};
      break;
    }
    default:
      throw ConfigError("family_id must be one of 1..5");
  }
  JetPoint out;
  out.t = t;
  out.x = x;
  out.u = ansatz_power(bu, pu, t, x);
  out.v = ansatz_power(bv, pv, t, x);
  return out;
}

ResidualPair reduced_ode_residual(const AnsatzProfile& a, double x) {
  const FamilyParams& fp = a.params;
  const double k = fp.k, l = fp.l;
  const Jet1 phi = a.phi(x);
  const Jet1 psi = a.psi(x);
  switch (fp.family_id) {
    case 1: {
      const double p = fp.p(x).value;
      return {phi.d2 + (k + 1.0) * fp.f(phi.value),
              psi.d2 + 0.5 * fp.g(phi.value) - (fp.lambda + p) * psi.value};
    }
    case 2: {
      const double s = phi.value - coupling_exponent(fp) * psi.value;
      return {phi.d2 + (k + 1.0) * fp.f(s), psi.d2 + (l + 1.0) * fp.g(s)};
    }
    case 3: {
      const double p = fp.p(x).value;
      const double s = phi.value - psi.value;
      return {phi.d2 - (p + fp.lambda) * phi.value + 0.5 * fp.f(s),
              psi.d2 - (p + fp.lambda) * psi.value + 0.5 * fp.g(s)};
    }
    case 4: {
      const double omega = std::exp(phi.value - coupling_exponent(fp) * psi.value);
      return {phi.d2 + (k + 1.0) * fp.f(omega),
              psi.d2 + psi.d1 * psi.d1 + (l + 1.0) * fp.g(omega)};
    }
    case 5: {
      const double omega = phi.value * real_power(psi.value, -coupling_exponent(fp));
      return {phi.d2 + (k + 1.0) * phi.value * fp.f(omega),
              psi.d2 + (l + 1.0) * psi.value * fp.g(omega)};
    }
    default:
      throw ConfigError("family_id must be one of 1..5");
  }
}

ResidualPair reduction_multipliers(const AnsatzProfile& a, double t, double x) {
  const FamilyParams& fp = a.params;
  const double k = fp.k, l = fp.l;
  switch (fp.family_id) {
    case 1:
    case 2:
    case 3:
      return {-1.0 / (k + 1.0), -1.0 / (l + 1.0)};
    case 4:
      return {-1.0 / (k + 1.0),
              -std::exp(fp.lambda2 * (l + 1.0) * t + a.psi(x).value) / (l + 1.0)};
    case 5:
      return {-std::exp(fp.lambda2 * (k + 1.0) * t) / (k + 1.0),
              -std::exp(fp.lambda4 * (l + 1.0) * t) / (l + 1.0)};
    default:
      throw ConfigError("family_id must be one of 1..5");
  }
}

ResidualPair invariant_surface_residual(const Family& family, const JetPoint& UV) {
  const double k = family.params.k, l = family.params.l;
  const double U = UV.u.value, V = UV.v.value;
  const BasePoint pt{UV.t, UV.x, real_power(U, k + 1.0), real_power(V, l + 1.0)};
  const OperatorJet j = family.op(pt);
  return {UV.u.t - j.eta1.value / ((k + 1.0) * real_power(U, k)),
          UV.v.t - j.eta2.value / ((l + 1.0) * real_power(V, l))};
}

std::string describe_family(const FamilyParams& fp) {
  std::ostringstream os;
  os << "family " << fp.family_id << " (k = " << fp.k << ", l = " << fp.l;
  switch (fp.family_id) {
    case 1:
    case 3:
      os << ", lambda = " << fp.lambda;
      break;
    case 2:
      os << ", lambda1 = " << fp.lambda1 << ", lambda2 = " << fp.lambda2
         << ", alpha = " << coupling_exponent(fp);
      break;
    case 4:
      os << ", lambda1 = " << fp.lambda1 << ", lambda2 = " << fp.lambda2
         << ", lambda3 = " << fp.lambda3;
      break;
    case 5:
      os << ", lambda1 = " << fp.lambda1 << ", lambda2 = " << fp.lambda2
         << ", lambda3 = " << fp.lambda3 << ", lambda4 = " << fp.lambda4;
      break;
  }
  os << ", f = " << fp.f.description() << ", g = " << fp.g.description() << ")";
  return os.str();
}

BasePoint sample_base_point(const FamilyParams& fp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BasePoint pt;
  pt.t = unit(rng);
  double lo = -1.0, hi = 1.0;
  if ((fp.family_id == 1 || fp.family_id == 3) && fp.p.bounded()) {
    lo = fp.p.begin();
    hi = fp.p.end();
  }
  pt.x = lo + (hi - lo) * unit(rng);
  const double u_floor = fp.family_id == 5 ? std::max(fp.lambda1, 0.0) : 0.0;
  const double v_floor = fp.family_id >= 4 ? std::max(fp.lambda3, 0.0) : 0.0;
  pt.u = u_floor + 0.5 + 1.5 * unit(rng);
  pt.v = v_floor + 0.5 + 1.5 * unit(rng);
  return pt;
}

}  // namespace rdsym
