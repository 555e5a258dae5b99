#include "rdsym/detcheck.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>

#include "rdsym/error.hpp"

namespace rdsym {

namespace {

// Step for the second-order central differences of operator coefficients.
double second_step(double arg) { return 1e-4 * std::max(1.0, std::abs(arg)); }

using Values = std::array<double, 3>;

enum Var { kT, kX, kU, kV };

BasePoint shifted(BasePoint p, Var var, double h) {
  switch (var) {
    case kT: p.t += h; break;
    case kX: p.x += h; break;
    case kU: p.u += h; break;
    case kV: p.v += h; break;
  }
  return p;
}

double coordinate(const BasePoint& p, Var var) {
  switch (var) {
    case kT: return p.t;
    case kX: return p.x;
    case kU: return p.u;
    default: return p.v;
  }
}

// Central-difference jets of the three coefficients.
std::array<CoefficientJet, 3> difference_jets(const QOperator::ValueEvaluator& f,
                                              const BasePoint& p) {
  std::array<CoefficientJet, 3> jets;
  const Values f0 = f(p);
  for (int c = 0; c < 3; ++c) jets[c].value = f0[c];

  auto first = [&](Var var, double CoefficientJet::*slot) {
    const double h = fd_step(coordinate(p, var));
    const Values fp = f(shifted(p, var, h));
    const Values fm = f(shifted(p, var, -h));
    for (int c = 0; c < 3; ++c) jets[c].*slot = (fp[c] - fm[c]) / (2.0 * h);
  };
  first(kT, &CoefficientJet::t);
  first(kX, &CoefficientJet::x);
  first(kU, &CoefficientJet::u);
  first(kV, &CoefficientJet::v);

  auto pure = [&](Var var, double CoefficientJet::*slot) {
    const double h = second_step(coordinate(p, var));
    const Values fp = f(shifted(p, var, h));
    const Values fm = f(shifted(p, var, -h));
    for (int c = 0; c < 3; ++c) jets[c].*slot = (fp[c] - 2.0 * f0[c] + fm[c]) / (h * h);
  };
  pure(kX, &CoefficientJet::xx);
  pure(kU, &CoefficientJet::uu);
  pure(kV, &CoefficientJet::vv);

  auto mixed = [&](Var a, Var b, double CoefficientJet::*slot) {
    const double ha = second_step(coordinate(p, a));
    const double hb = second_step(coordinate(p, b));
    const Values fpp = f(shifted(shifted(p, a, ha), b, hb));
    const Values fpm = f(shifted(shifted(p, a, ha), b, -hb));
    const Values fmp = f(shifted(shifted(p, a, -ha), b, hb));
    const Values fmm = f(shifted(shifted(p, a, -ha), b, -hb));
    for (int c = 0; c < 3; ++c)
      jets[c].*slot = (fpp[c] - fpm[c] - fmp[c] + fmm[c]) / (4.0 * ha * hb);
  };
  mixed(kX, kU, &CoefficientJet::xu);
  mixed(kX, kV, &CoefficientJet::xv);
  mixed(kU, kV, &CoefficientJet::uv);
  return jets;
}

struct Powers {
  double um, vn, um1, vn1;
};

Powers powers(const RDSystemTransformed& sys, double u, double v) {
  Powers p{};
  p.um = real_power(u, sys.m);
  p.vn = real_power(v, sys.n);
  // u^{m-1} always appears multiplied by m.
  p.um1 = sys.m != 0.0 ? real_power(u, sys.m - 1.0) : 0.0;
  p.vn1 = sys.n != 0.0 ? real_power(v, sys.n - 1.0) : 0.0;
  return p;
}

// Total second x-derivative of a coefficient along a jet.
double total_xx(const CoefficientJet& f, double ux, double vx, double uxx, double vxx) {
  return f.xx + 2.0 * f.xu * ux + 2.0 * f.xv * vx + f.uu * ux * ux + f.vv * vx * vx +
         2.0 * f.uv * ux * vx + f.u * uxx + f.v * vxx;
}

}  // namespace

QOperator::QOperator(Evaluator eval, bool finite_difference_backed)
    : eval_(std::move(eval)), fd_backed_(finite_difference_backed) {}

QOperator QOperator::time_translation() {
  return QOperator([](const BasePoint&) { return OperatorJet{}; });
}

QOperator QOperator::structured(StructuredCoefficients k) {
  return QOperator([k = std::move(k)](const BasePoint& p) {
    const TxJet c = k.c(p.t, p.x);
    const TxJet q1 = k.q1(p.t, p.x), r1 = k.r1(p.t, p.x), p1 = k.p1(p.t, p.x);
    const TxJet q2 = k.q2(p.t, p.x), r2 = k.r2(p.t, p.x), p2 = k.p2(p.t, p.x);

    OperatorJet j;
    j.xi.value = c.value;
    j.xi.t = c.t;
    j.xi.x = c.x;
    j.xi.xx = c.xx;

    // eta = q(t) * other + r(t,x) * own + p(t,x)
    auto linear = [&](CoefficientJet& e, const TxJet& q, const TxJet& r, const TxJet& s,
                      double own, double other, bool own_is_u) {
      e.value = q.value * other + r.value * own + s.value;
      e.t = q.t * other + r.t * own + s.t;
      e.x = r.x * own + s.x;
      e.xx = r.xx * own + s.xx;
      if (own_is_u) {
        e.u = r.value;
        e.v = q.value;
        e.xu = r.x;
      } else {
        e.u = q.value;
        e.v = r.value;
        e.xv = r.x;
      }
    };
    linear(j.eta1, q1, r1, p1, p.u, p.v, true);
    linear(j.eta2, q2, r2, p2, p.v, p.u, false);
    return j;
  });
}

QOperator QOperator::from_values(ValueEvaluator values) {
  return QOperator(
      [values = std::move(values)](const BasePoint& p) {
        const auto jets = difference_jets(values, p);
        return OperatorJet{jets[0], jets[1], jets[2]};
      },
      true);
}

double partials_consistency_defect(const QOperator& op, std::span<const BasePoint> points) {
  auto values = [&op](const BasePoint& p) {
    const OperatorJet j = op(p);
    return Values{j.xi.value, j.eta1.value, j.eta2.value};
  };
  double worst = 0.0;
  for (const BasePoint& p : points) {
    const OperatorJet exact = op(p);
    const auto approx = difference_jets(values, p);
    const std::array<const CoefficientJet*, 3> ex{&exact.xi, &exact.eta1, &exact.eta2};
    for (int c = 0; c < 3; ++c) {
      const CoefficientJet& a = *ex[c];
      const CoefficientJet& b = approx[c];
      for (double CoefficientJet::*slot :
           {&CoefficientJet::value, &CoefficientJet::t, &CoefficientJet::x, &CoefficientJet::u,
            &CoefficientJet::v, &CoefficientJet::xx, &CoefficientJet::xu, &CoefficientJet::xv,
            &CoefficientJet::uu, &CoefficientJet::vv, &CoefficientJet::uv}) {
        const double scale = std::max(1.0, std::abs(a.*slot));
        worst = std::max(worst, std::abs(a.*slot - b.*slot) / scale);
      }
    }
  }
  return worst;
}

DeterminingReport determining_residuals(const QOperator& op, const RDSystemTransformed& sys,
                                        const BasePoint& pt) {
  const OperatorJet j = op(pt);
  const CoefficientJet& X = j.xi;
  const CoefficientJet& A = j.eta1;
  const CoefficientJet& B = j.eta2;
  const double xi = X.value, e1 = A.value, e2 = B.value;
  const double m = sys.m, n = sys.n;
  const Powers w = powers(sys, pt.u, pt.v);
  const double C1 = sys.C1(pt.u, pt.v);
  const double C2 = sys.C2(pt.u, pt.v);
  const auto dC1 = sys.C1.gradient(pt.u, pt.v);
  const auto dC2 = sys.C2.gradient(pt.u, pt.v);

  DeterminingReport r;
  r.point = pt;
  auto& e = r.residuals;
  e[0] = std::max({std::abs(X.uu), std::abs(X.vv), std::abs(X.uv)});
  e[1] = A.vv;
  e[2] = B.uu;
  e[3] = 2.0 * xi * X.u * w.um + A.uu - 2.0 * X.xu;
  e[4] = 2.0 * xi * X.v * w.vn + B.vv - 2.0 * X.xv;
  e[5] = xi * X.v * (w.um + w.vn) + 2.0 * A.uv - 2.0 * X.xv;
  e[6] = xi * X.u * (w.um + w.vn) + 2.0 * B.uv - 2.0 * X.xu;
  e[7] = xi * A.v * (w.um - w.vn) + 2.0 * A.xv - 2.0 * X.v * C1 - 2.0 * X.v * e1 * w.um;
  e[8] = xi * B.u * (w.vn - w.um) + 2.0 * B.xu - 2.0 * X.u * C2 - 2.0 * X.u * e2 * w.vn;
  e[9] = -m * xi * e1 * w.um1 + (2.0 * X.u * e1 - X.t - X.v * e2 - 2.0 * xi * X.x) * w.um +
         X.v * e2 * w.vn + 3.0 * X.u * C1 + X.v * C2 - 2.0 * A.xu + X.xx;
  e[10] = -n * xi * e2 * w.vn1 + (2.0 * X.v * e2 - X.t - X.u * e1 - 2.0 * xi * X.x) * w.vn +
          X.u * e1 * w.um + 3.0 * X.v * C2 + X.u * C1 - 2.0 * B.xv + X.xx;
  e[11] = m * e1 * e1 * w.um1 + (A.t + e2 * A.v + 2.0 * X.x * e1) * w.um - e2 * A.v * w.vn +
          e1 * dC1[0] + e2 * dC1[1] - A.u * C1 + 2.0 * X.x * C1 - A.v * C2 - A.xx;
  e[12] = n * e2 * e2 * w.vn1 + (B.t + e1 * B.u + 2.0 * X.x * e2) * w.vn - e1 * B.u * w.um +
          e1 * dC2[0] + e2 * dC2[1] - B.u * C1 + 2.0 * X.x * C2 - B.v * C2 - B.xx;

  r.max_abs = 0.0;
  for (double v : e) r.max_abs = std::max(r.max_abs, std::abs(v));
  return r;
}

ResidualPair invariance_residual(const QOperator& op, const RDSystemTransformed& sys,
                                 const JetPoint& p) {
  const BasePoint base{p.t, p.x, p.u.value, p.v.value};
  const OperatorJet j = op(base);
  const CoefficientJet& X = j.xi;
  const CoefficientJet& A = j.eta1;
  const CoefficientJet& B = j.eta2;
  const Powers w = powers(sys, base.u, base.v);
  const double C1 = sys.C1(base.u, base.v);
  const double C2 = sys.C2(base.u, base.v);
  const auto dC1 = sys.C1.gradient(base.u, base.v);
  const auto dC2 = sys.C2.gradient(base.u, base.v);
  const double ux = p.u.x;
  const double vx = p.v.x;

  // Invariant-surface conditions and the system itself.
  const double ut = A.value - X.value * ux;
  const double vt = B.value - X.value * vx;
  const double uxx = ut * w.um + C1;
  const double vxx = vt * w.vn + C2;

  const double dt_xi = X.t + X.u * ut + X.v * vt;
  const double dx_xi = X.x + X.u * ux + X.v * vx;
  const double dxx_xi = total_xx(X, ux, vx, uxx, vxx);

  const double rho1 = A.t + A.u * ut + A.v * vt - ux * dt_xi;
  const double rho2 = B.t + B.u * ut + B.v * vt - vx * dt_xi;
  const double sigma1 = total_xx(A, ux, vx, uxx, vxx) - ux * dxx_xi - 2.0 * uxx * dx_xi;
  const double sigma2 = total_xx(B, ux, vx, uxx, vxx) - vx * dxx_xi - 2.0 * vxx * dx_xi;

  return {sys.m * A.value * w.um1 * ut + A.value * dC1[0] + B.value * dC1[1] + rho1 * w.um -
              sigma1,
          sys.n * B.value * w.vn1 * vt + A.value * dC2[0] + B.value * dC2[1] + rho2 * w.vn -
              sigma2};
}

double MonomialTable::max_abs() const {
  double worst = 0.0;
  for (const Grid* g : {&first, &second})
    for (const auto& row : *g)
      for (double c : row) worst = std::max(worst, std::abs(c));
  return worst;
}

ResidualPair MonomialTable::evaluate(double ux, double vx) const {
  ResidualPair out;
  double upow = 1.0;
  for (int i = 0; i < 4; ++i, upow *= ux) {
    double vpow = 1.0;
    for (int jj = 0; jj < 4; ++jj, vpow *= vx) {
      out.first += first[i][jj] * upow * vpow;
      out.second += second[i][jj] * upow * vpow;
    }
  }
  return out;
}

MonomialTable split_in_gradients(const QOperator& op, const RDSystemTransformed& sys,
                                 const BasePoint& pt) {
  constexpr int kN = static_cast<int>(kSplitNodes.size());
  constexpr int kSize = kN * kN;
  Eigen::Matrix<double, kSize, kSize> vandermonde;
  Eigen::Matrix<double, kSize, 2> rhs;

  JetPoint jet;
  jet.t = pt.t;
  jet.x = pt.x;
  jet.u.value = pt.u;
  jet.v.value = pt.v;
  for (int a = 0; a < kN; ++a) {
    for (int b = 0; b < kN; ++b) {
      const int row = a * kN + b;
      jet.u.x = kSplitNodes[a];
      jet.v.x = kSplitNodes[b];
      const ResidualPair r = invariance_residual(op, sys, jet);
      rhs(row, 0) = r.first;
      rhs(row, 1) = r.second;
      for (int i = 0; i < kN; ++i)
        for (int jj = 0; jj < kN; ++jj)
          vandermonde(row, i * kN + jj) =
              std::pow(kSplitNodes[a], i) * std::pow(kSplitNodes[b], jj);
    }
  }

  const Eigen::FullPivLU<Eigen::Matrix<double, kSize, kSize>> lu(vandermonde);
  if (lu.rank() < kSize) throw NumericsError("gradient interpolation matrix is rank deficient");
  const Eigen::Matrix<double, kSize, 2> coeffs = lu.solve(rhs);

  MonomialTable table;
  for (int i = 0; i < kN; ++i) {
    for (int jj = 0; jj < kN; ++jj) {
      table.first[i][jj] = coeffs(i * kN + jj, 0);
      table.second[i][jj] = coeffs(i * kN + jj, 1);
    }
  }
  return table;
}

double default_tolerance(const QOperator& op, const RDSystemTransformed& sys) {
  const bool fd = op.finite_difference_backed() || !sys.C1.analytic() || !sys.C2.analytic();
  return fd ? 1e-5 : 1e-9;
}

}  // namespace rdsym
