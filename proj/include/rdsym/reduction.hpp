#pragma once

#include <array>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "rdsym/core_model.hpp"
#include "rdsym/families.hpp"
#include "rdsym/profile.hpp"

namespace rdsym {

/// Coupling matrix of the linear reduced system phi'' = a1 phi + b1 psi,
/// psi'' = a2 phi + b2 psi, plus the data of the parent reaction-diffusion system.
/// The decay rate r fixes lambda2 = -r/(k+1) and lambda4 = -r/(l+1).
struct LinearReductionParams {
  double alpha1 = -2.0;
  double beta1 = -1.0;
  double alpha2 = -2.0;
  double beta2 = -2.0;
  double r = 2.0;
  double k = 1.0;
  double l = 1.0;
  double lambda1 = 1.0;
  double lambda3 = 2.0;

  double lambda2() const { return -r / (k + 1.0); }
  double lambda4() const { return -r / (l + 1.0); }
};

/// Reaction term expanded as
///   self_linear * W + self_power * W^{p+1} + cross_power * Z^{q+1}
///   + self_inverse * W^{-p} + constant,
/// where W is the own field (power p) and Z the other one.
struct ReactionTerms {
  double self_linear = 0.0;
  double self_power = 0.0;
  double cross_power = 0.0;
  double self_inverse = 0.0;
  double constant = 0.0;
};

struct LinearSystem {
  RDSystemOriginal system;
  ReactionTerms F_terms;
  ReactionTerms G_terms;
  /// The same system as a member of family 5 (f, g specialised to the linear case).
  FamilyParams family;
};

/// Throws ConfigError for beta1 = 0 or (k+1)(l+1) = 0.
LinearSystem specialize_linear(const LinearReductionParams& p);

struct SpectralData {
  std::array<std::complex<double>, 4> roots{};
  double s1_mod = 0.0;
  double s3_mod = 0.0;
  bool purely_imaginary = false;
  /// Two roots coincide up to a relative gap of 1e-8.
  bool degenerate = false;
  /// (a1 - b2)^2 + 4 a2 b1
  double discriminant = 0.0;
  std::string method;
};

/// Roots of s^4 - (a1+b2) s^2 + (a1 b2 - a2 b1) in closed form (complex arithmetic),
/// ordered +sqrt(S+), -sqrt(S+), +sqrt(S-), -sqrt(S-).
std::array<std::complex<double>, 4> quartic_roots_closed_form(double alpha1, double beta1,
                                                              double alpha2, double beta2);

/// Same roots as eigenvalues of the 4x4 companion matrix.
std::array<std::complex<double>, 4> quartic_roots_companion(double alpha1, double beta1,
                                                            double alpha2, double beta2);

/// Largest root distance under the best pairing of the two root sets.
double root_set_distance(const std::array<std::complex<double>, 4>& a,
                         const std::array<std::complex<double>, 4>& b);

/// Closed form when the purely-imaginary conditions hold, companion matrix otherwise.
SpectralData quartic_spectrum(double alpha1, double beta1, double alpha2, double beta2);

/// sum_i a_i cos(w_i x) + b_i sin(w_i x) with derivatives of any order.
class TrigProfile {
public:
  struct Mode {
    double frequency = 0.0;
    double cos_amplitude = 0.0;
    double sin_amplitude = 0.0;
  };

  TrigProfile() = default;
  explicit TrigProfile(std::vector<Mode> modes) : modes_(std::move(modes)) {}

  double derivative(int order, double x) const;
  double operator()(double x) const { return derivative(0, x); }
  Jet1 jet(double x) const { return {derivative(0, x), derivative(1, x), derivative(2, x)}; }
  Profile as_profile() const;

  const std::vector<Mode>& modes() const { return modes_; }
  /// Upper bound of |profile(x)| (sum of mode amplitudes).
  double amplitude_bound() const;

private:
  std::vector<Mode> modes_;
};

struct ReducedSolution {
  TrigProfile phi;
  TrigProfile psi;
};

/// General solution of the linear reduced system in the purely imaginary case.
/// A = (A1, A2, A3, A4) multiply cos/sin of |s1| x and cos/sin of |s3| x.
ReducedSolution general_solution(const SpectralData& spec, double alpha1, double beta1,
                                 const std::array<double, 4>& A);

/// Sampled solution of p'' = p^2 + lambda p, immutable after integration.
class PSolution {
public:
  PSolution(double lambda, double x_begin, double h, std::vector<double> p,
            std::vector<double> dp);

  double lambda() const { return lambda_; }
  double x_begin() const { return x_begin_; }
  double x_end() const { return x_begin_ + h_ * static_cast<double>(p_.size() - 1); }
  double step() const { return h_; }
  std::size_t size() const { return p_.size(); }
  double node(std::size_t i) const { return x_begin_ + h_ * static_cast<double>(i); }
  const std::vector<double>& values() const { return p_; }
  const std::vector<double>& slopes() const { return dp_; }

  /// p, p', p'' anywhere in the span: one partial RK4 step from the nearest node
  /// to the left; p'' comes from the ODE itself.
  Jet1 operator()(double x) const;
  Profile as_profile() const;

private:
  double lambda_;
  double x_begin_;
  double h_;
  std::vector<double> p_;
  std::vector<double> dp_;
};

/// Classical RK4 on (p, p') from x_begin to x_end, step <= step.
/// Throws NumericsError at the first node where |p| > 1e12.
PSolution solve_p_ode(double lambda, double p0, double dp0, double x_begin, double x_end,
                      double step);

}  // namespace rdsym
