#pragma once

#include <optional>
#include <random>
#include <string>

#include "rdsym/core_model.hpp"
#include "rdsym/detcheck.hpp"
#include "rdsym/functions.hpp"
#include "rdsym/profile.hpp"

namespace rdsym {

/// Parameters of one of the five conditionally invariant systems.
///
/// Which fields matter depends on the family:
///   1: k, lambda, f, g, p          (l = -1/2 forced)
///   2: k, l, lambda1, lambda2, f, g (alpha derived)
///   3: lambda, f, g, p             (k = l = -1/2 forced)
///   4: k, l, lambda1..lambda3, f, g
///   5: k, l, lambda1..lambda4, f, g
struct FamilyParams {
  int family_id = 2;
  double k = 1.0;
  double l = 1.0;
  double lambda = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 1.0;
  double lambda3 = 0.0;
  double lambda4 = 1.0;
  /// Family 2 coupling; must equal lambda1 (k+1) / (lambda2 (l+1)) when given.
  std::optional<double> alpha;
  UnivariateFunction f;
  UnivariateFunction g;
  /// Solution of p'' = p^2 + lambda p (families 1 and 3).
  Profile p;
};

/// Throws ConfigError naming the violated restriction.
void validate_family(const FamilyParams& params);

/// lambda1 (k+1) / (lambda2 (l+1)) for family 2 and 4, lambda2 (k+1) / (lambda4 (l+1)) for 5.
double coupling_exponent(const FamilyParams& params);

struct Family {
  FamilyParams params;
  RDSystemOriginal system;
  RDSystemTransformed transformed;
  /// The operator in (u, v) variables.
  QOperator op;
};

Family build_family(const FamilyParams& params);

/// Profiles phi(x), psi(x) plugged into the family's ansatz.
struct AnsatzProfile {
  FamilyParams params;
  Profile phi;
  Profile psi;
};

/// (U, V) with analytic U_t, U_x, U_xx, V_t, V_x, V_xx.
JetPoint ansatz_eval(const AnsatzProfile& a, double t, double x);

/// Residuals of the reduced ODE system written as "lhs - rhs" with phi_xx (psi_xx) first.
ResidualPair reduced_ode_residual(const AnsatzProfile& a, double x);

/// Factors mu with original_residual(ansatz) = mu * reduced_ode_residual, componentwise.
/// Never zero, so one residual vanishes iff the other does.
ResidualPair reduction_multipliers(const AnsatzProfile& a, double t, double x);

/// U_t - eta1 / ((k+1) U^k) and V_t - eta2 / ((l+1) V^l): the invariant-surface
/// conditions Q(U) = Q(V) = 0 in original variables (xi = 0 for every family).
ResidualPair invariant_surface_residual(const Family& family, const JetPoint& UV);

std::string describe_family(const FamilyParams& params);

/// Random (t, x, u, v) in the family's admissible region: t in [0, 1], x in the span
/// of p (or [-1, 1]), u, v at least 0.5 above every singular level.
BasePoint sample_base_point(const FamilyParams& params, std::mt19937_64& rng);

}  // namespace rdsym
