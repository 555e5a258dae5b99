#include "rdsym/reduction.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdsym/error.hpp"

namespace rdsym {

namespace {

using cplx = std::complex<double>;

BivariateFunction reaction_function(const ReactionTerms& c, double own, double other,
                                    bool own_is_first) {
  // own/other are the diffusivity powers of the own and the other field.
  auto value = [=](double W, double Z) {
    return c.self_linear * W + c.self_power * real_power(W, own + 1.0) +
           c.cross_power * real_power(Z, other + 1.0) + c.self_inverse * real_power(W, -own) +
           c.constant;
  };
  auto grad = [=](double W, double Z) {
    const double dW = c.self_linear + c.self_power * (own + 1.0) * real_power(W, own) -
                      c.self_inverse * own * real_power(W, -own - 1.0);
    const double dZ = c.cross_power * (other + 1.0) * real_power(Z, other);
    return std::array<double, 2>{dW, dZ};
  };
  if (own_is_first) return BivariateFunction(value, grad);
  return BivariateFunction([value](double U, double V) { return value(V, U); },
                           [grad](double U, double V) {
                             const auto g = grad(V, U);
                             return std::array<double, 2>{g[1], g[0]};
                           });
}

double min_pairwise_gap(const std::array<cplx, 4>& roots) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) gap = std::min(gap, std::abs(roots[i] - roots[j]));
  return gap;
}

}  // namespace

LinearSystem specialize_linear(const LinearReductionParams& p) {
  if (p.beta1 == 0.0)
    throw ConfigError("beta1 != 0 is required to eliminate psi (swap the roles of the fields "
                      "when alpha2 != 0)");
  if ((p.k + 1.0) * (p.l + 1.0) == 0.0) throw ConfigError("(k+1)(l+1) != 0 is required");
  const double ku = p.k + 1.0, lv = p.l + 1.0;

  LinearSystem out;
  out.F_terms = {-p.r / ku, -p.alpha1 / ku, -p.beta1 / ku, p.lambda1 * p.r / ku,
                 (p.alpha1 * p.lambda1 + p.beta1 * p.lambda3) / ku};
  out.G_terms = {-p.r / lv, -p.beta2 / lv, -p.alpha2 / lv, p.lambda3 * p.r / lv,
                 (p.alpha2 * p.lambda1 + p.beta2 * p.lambda3) / lv};

  out.system.k = p.k;
  out.system.l = p.l;
  out.system.F = reaction_function(out.F_terms, p.k, p.l, true);
  out.system.G = reaction_function(out.G_terms, p.l, p.k, false);
  out.system.label = "linear reduction system";

  FamilyParams& fam = out.family;
  fam.family_id = 5;
  fam.k = p.k;
  fam.l = p.l;
  fam.lambda1 = p.lambda1;
  fam.lambda2 = p.lambda2();
  fam.lambda3 = p.lambda3;
  fam.lambda4 = p.lambda4();
  fam.f = UnivariateFunction::reciprocal(-p.alpha1 / ku, -p.beta1 / ku);
  fam.g = UnivariateFunction::linear(-p.alpha2 / lv, -p.beta2 / lv);
  return out;
}

std::array<cplx, 4> quartic_roots_closed_form(double alpha1, double beta1, double alpha2,
                                              double beta2) {
  const double trace = alpha1 + beta2;
  const double disc = (alpha1 - beta2) * (alpha1 - beta2) + 4.0 * alpha2 * beta1;
  const cplx root_disc = std::sqrt(cplx(disc, 0.0));
  const cplx s_plus = 0.5 * (trace + root_disc);
  const cplx s_minus = 0.5 * (trace - root_disc);
  const cplx r1 = std::sqrt(s_plus);
  const cplx r3 = std::sqrt(s_minus);
  return {r1, -r1, r3, -r3};
}

std::array<cplx, 4> quartic_roots_companion(double alpha1, double beta1, double alpha2,
                                            double beta2) {
  // s^4 + c2 s^2 + c0
  const double c2 = -(alpha1 + beta2);
  const double c0 = alpha1 * beta2 - alpha2 * beta1;
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  companion(0, 3) = -c0;
  companion(2, 3) = -c2;
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericsError("companion eigenvalue solve failed");
  std::array<cplx, 4> roots;
  for (int i = 0; i < 4; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

double root_set_distance(const std::array<std::complex<double>, 4>& a,
                         const std::array<std::complex<double>, 4>& b) {
  std::array<int, 4> perm{0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

SpectralData quartic_spectrum(double alpha1, double beta1, double alpha2, double beta2) {
  SpectralData out;
  const double trace = alpha1 + beta2;
  out.discriminant = (alpha1 - beta2) * (alpha1 - beta2) + 4.0 * alpha2 * beta1;
  out.purely_imaginary = out.discriminant > 0.0 && trace < -std::sqrt(out.discriminant);

  if (out.purely_imaginary) {
    out.roots = quartic_roots_closed_form(alpha1, beta1, alpha2, beta2);
    out.method = "closed form";
  } else {
    out.roots = quartic_roots_companion(alpha1, beta1, alpha2, beta2);
    out.method = "companion matrix";
  }
  const auto closed = quartic_roots_closed_form(alpha1, beta1, alpha2, beta2);
  out.s1_mod = std::abs(closed[0]);
  out.s3_mod = std::abs(closed[2]);

  double scale = 1.0;
  for (const cplx& r : closed) scale = std::max(scale, std::abs(r));
  out.degenerate = min_pairwise_gap(closed) < 1e-8 * scale;
  return out;
}

double TrigProfile::derivative(int order, double x) const {
  double sum = 0.0;
  for (const Mode& m : modes_) {
    const double c = std::cos(m.frequency * x);
    const double s = std::sin(m.frequency * x);
    const double scale = std::pow(m.frequency, order);
    double term = 0.0;
    switch (order % 4) {
      case 0: term = m.cos_amplitude * c + m.sin_amplitude * s; break;
      case 1: term = -m.cos_amplitude * s + m.sin_amplitude * c; break;
      case 2: term = -m.cos_amplitude * c - m.sin_amplitude * s; break;
      default: term = m.cos_amplitude * s - m.sin_amplitude * c; break;
    }
    sum += scale * term;
  }
  return sum;
}

Profile TrigProfile::as_profile() const {
  return Profile([self = *this](double x) { return self.jet(x); });
}

double TrigProfile::amplitude_bound() const {
  double bound = 0.0;
  for (const Mode& m : modes_) bound += std::hypot(m.cos_amplitude, m.sin_amplitude);
  return bound;
}

ReducedSolution general_solution(const SpectralData& spec, double alpha1, double beta1,
                                 const std::array<double, 4>& A) {
  if (!spec.purely_imaginary)
    throw ConfigError("closed-form reduced solution needs four distinct purely imaginary roots");
  if (beta1 == 0.0) throw ConfigError("beta1 != 0 is required");
  const double w1 = spec.s1_mod, w3 = spec.s3_mod;
  const double c1 = -(alpha1 + w1 * w1) / beta1;
  const double c3 = -(alpha1 + w3 * w3) / beta1;
  ReducedSolution sol;
  sol.phi = TrigProfile({{w1, A[0], A[1]}, {w3, A[2], A[3]}});
  sol.psi = TrigProfile({{w1, c1 * A[0], c1 * A[1]}, {w3, c3 * A[2], c3 * A[3]}});
  return sol;
}

PSolution::PSolution(double lambda, double x_begin, double h, std::vector<double> p,
                     std::vector<double> dp)
    : lambda_(lambda), x_begin_(x_begin), h_(h), p_(std::move(p)), dp_(std::move(dp)) {}

namespace {

struct PState {
  double p;
  double dp;
};

PState rk4_step(PState y, double h, double lambda) {
  auto rhs = [lambda](const PState& s) { return PState{s.dp, s.p * s.p + lambda * s.p}; };
  const PState k1 = rhs(y);
  const PState k2 = rhs({y.p + 0.5 * h * k1.p, y.dp + 0.5 * h * k1.dp});
  const PState k3 = rhs({y.p + 0.5 * h * k2.p, y.dp + 0.5 * h * k2.dp});
  const PState k4 = rhs({y.p + h * k3.p, y.dp + h * k3.dp});
  return {y.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
          y.dp + h / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp)};
}

}  // namespace

Jet1 PSolution::operator()(double x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(x));
  if (x < x_begin() - slack || x > x_end() + slack) {
    std::ostringstream msg;
    msg << "x = " << x << " outside the integrated span [" << x_begin() << ", " << x_end() << "]";
    throw DomainError(msg.str(), std::nullopt, x);
  }
  const double pos = (x - x_begin_) / h_;
  const auto last = p_.size() - 1;
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, std::floor(pos))), last);
  const double dx = x - node(i);
  const PState y = dx == 0.0 ? PState{p_[i], dp_[i]} : rk4_step({p_[i], dp_[i]}, dx, lambda_);
  return {y.p, y.dp, y.p * y.p + lambda_ * y.p};
}

Profile PSolution::as_profile() const {
  return Profile([self = *this](double x) { return self(x); }, x_begin(), x_end());
}

PSolution solve_p_ode(double lambda, double p0, double dp0, double x_begin, double x_end,
                      double step) {
  if (!(step > 0.0)) throw ConfigError("p-ODE step must be positive");
  if (!(x_end > x_begin) || !std::isfinite(x_end - x_begin))
    throw ConfigError("p-ODE span must be finite with x_end > x_begin");
  const auto n = static_cast<std::size_t>(std::ceil((x_end - x_begin) / step - 1e-9));
  const double h = (x_end - x_begin) / static_cast<double>(n);

  std::vector<double> p(n + 1), dp(n + 1);
  PState y{p0, dp0};
  p[0] = p0;
  dp[0] = dp0;
  for (std::size_t i = 1; i <= n; ++i) {
    y = rk4_step(y, h, lambda);
    if (!std::isfinite(y.p) || std::abs(y.p) > 1e12) {
      const double at = x_begin + h * static_cast<double>(i);
      std::ostringstream msg;
      msg << "p-ODE solution blows up near x = " << at;
      throw NumericsError(msg.str(), at);
    }
    p[i] = y.p;
    dp[i] = y.dp;
  }
  return PSolution(lambda, x_begin, h, std::move(p), std::move(dp));
}

}  // namespace rdsym
