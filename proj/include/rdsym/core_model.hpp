#pragma once

#include <array>
#include <string>

#include "rdsym/functions.hpp"

namespace rdsym {

/// U_t = (U^k U_x)_x + F(U,V),  V_t = (V^l V_x)_x + G(U,V).
struct RDSystemOriginal {
  double k = 0.0;
  double l = 0.0;
  BivariateFunction F;
  BivariateFunction G;
  /// Fields must stay strictly positive (fractional powers, U^{-k} terms).
  /// Pure-diffusion systems with integer k, l >= 0 may switch this off.
  bool positive_fields = true;
  std::string label;

  /// Throws ConfigError when (k+1)(l+1) = 0.
  void validate() const;
};

/// u_xx = u^m u_t + C1(u,v),  v_xx = v^n v_t + C2(u,v).
struct RDSystemTransformed {
  double m = 0.0;
  double n = 0.0;
  BivariateFunction C1;
  BivariateFunction C2;
};

/// Value of a field together with its first time and first/second space derivatives.
struct FieldJet {
  double value = 0.0;
  double t = 0.0;
  double x = 0.0;
  double xx = 0.0;
};

/// Point of the jet space. `u`, `v` hold either (U, V) or (u, v) depending on
/// which system the point belongs to.
struct JetPoint {
  double t = 0.0;
  double x = 0.0;
  FieldJet u;
  FieldJet v;
};

struct ResidualPair {
  double first = 0.0;
  double second = 0.0;

  double max_abs() const { return std::max(std::abs(first), std::abs(second)); }
};

/// base^p with derivatives by the chain rule.
FieldJet power_of(const FieldJet& base, double p);

/// u = U^{k+1}, v = V^{l+1}; m = -k/(k+1), n = -l/(l+1),
/// C1 = -(k+1) F(u^{1/(k+1)}, v^{1/(l+1)}), C2 = -(l+1) G(...).
RDSystemTransformed transform_to_uv(const RDSystemOriginal& sys);

/// Inverse substitution (it has the same form since k = -m/(m+1)).
RDSystemOriginal transform_to_UV(const RDSystemTransformed& sys);

/// Maps a jet point of the original system to the transformed variables.
JetPoint map_jet_to_uv(const JetPoint& p, double k, double l);

/// r1 = U_t - k U^{k-1} U_x^2 - U^k U_xx - F(U,V), r2 analogous.
ResidualPair original_residual(const RDSystemOriginal& sys, const JetPoint& p);

/// r1 = u_xx - u^m u_t - C1(u,v), r2 = v_xx - v^n v_t - C2(u,v).
ResidualPair transformed_residual(const RDSystemTransformed& sys, const JetPoint& p);

}  // namespace rdsym
