#pragma once

#include <array>
#include <functional>
#include <span>

#include "rdsym/core_model.hpp"

namespace rdsym {

/// (t, x, u, v): the point where operator coefficients are evaluated.
struct BasePoint {
  double t = 0.0;
  double x = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// A coefficient of the operator with every partial the determining equations use.
struct CoefficientJet {
  double value = 0.0;
  double t = 0.0, x = 0.0, u = 0.0, v = 0.0;
  double xx = 0.0, xu = 0.0, xv = 0.0, uu = 0.0, vv = 0.0, uv = 0.0;
};

/// Coefficients of Q = d_t + xi d_x + eta1 d_u + eta2 d_v at one point.
struct OperatorJet {
  CoefficientJet xi;
  CoefficientJet eta1;
  CoefficientJet eta2;
};

/// A function of (t, x) with the derivatives needed by the structured form.
struct TxJet {
  double value = 0.0;
  double t = 0.0;
  double x = 0.0;
  double xx = 0.0;
};
using TxFunction = std::function<TxJet(double t, double x)>;

/// xi = c(t,x), eta1 = q1(t) v + r1(t,x) u + p1(t,x), eta2 = q2(t) u + r2(t,x) v + p2(t,x).
/// q1, q2 are read as functions of t only (their x-derivatives are ignored).
struct StructuredCoefficients {
  TxFunction c, q1, r1, p1, q2, r2, p2;
};

/// Conditional symmetry operator in (t, x, u, v) variables.
class QOperator {
public:
  using Evaluator = std::function<OperatorJet(const BasePoint&)>;
  using ValueEvaluator = std::function<std::array<double, 3>(const BasePoint&)>;

  explicit QOperator(Evaluator eval, bool finite_difference_backed = false);

  /// The trivial operator d_t.
  static QOperator time_translation();
  static QOperator structured(StructuredCoefficients coefficients);
  /// Values of (xi, eta1, eta2) only; partials by central differences.
  static QOperator from_values(ValueEvaluator values);

  OperatorJet operator()(const BasePoint& p) const { return eval_(p); }
  bool finite_difference_backed() const { return fd_backed_; }

private:
  Evaluator eval_;
  bool fd_backed_ = false;
};

/// Largest discrepancy between the operator's partials and central differences of
/// its values over the given points. Analytic operators give O(h^2) ~ 1e-7 or less.
double partials_consistency_defect(const QOperator& op, std::span<const BasePoint> points);

/// The 13 determining equations evaluated at one point; entry 0 is equation 1
/// (max of |xi_uu|, |xi_vv|, |xi_uv|).
struct DeterminingReport {
  std::array<double, 13> residuals{};
  double max_abs = 0.0;
  BasePoint point;
};

DeterminingReport determining_residuals(const QOperator& op, const RDSystemTransformed& sys,
                                        const BasePoint& pt);

/// Prolonged invariance condition with u_t, v_t, u_xx, v_xx eliminated through the
/// system and the invariant-surface conditions. Uses p.t, p.x, p.u.value, p.v.value,
/// p.u.x and p.v.x; the remaining slots are ignored.
ResidualPair invariance_residual(const QOperator& op, const RDSystemTransformed& sys,
                                 const JetPoint& p);

/// Coefficients of u_x^i v_x^j (i, j = 0..3) in both invariance residuals.
struct MonomialTable {
  using Grid = std::array<std::array<double, 4>, 4>;
  Grid first{};
  Grid second{};

  double max_abs() const;
  /// Sum of coefficient * monomial, i.e. the reconstructed residual.
  ResidualPair evaluate(double ux, double vx) const;
};

/// Gradient nodes of the interpolation grid.
inline constexpr std::array<double, 4> kSplitNodes{-1.5, -0.5, 0.5, 1.5};

/// Exact polynomial interpolation of invariance_residual over the 4x4 gradient grid.
MonomialTable split_in_gradients(const QOperator& op, const RDSystemTransformed& sys,
                                 const BasePoint& pt);

/// 1e-9 for analytic evaluators, 1e-5 when any partial is finite-difference backed.
double default_tolerance(const QOperator& op, const RDSystemTransformed& sys);

}  // namespace rdsym
