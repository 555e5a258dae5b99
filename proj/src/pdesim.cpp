#include "rdsym/pdesim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdsym/error.hpp"

namespace rdsym {

Grid1D::Grid1D(double a, int N, double origin) : a_(a), N_(N), origin_(origin) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("grid length a must be positive");
  if (N < 8) throw ConfigError("grid needs at least 8 cells");
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> x(size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = this->x(i);
  x.back() = origin_ + a_;
  return x;
}

std::vector<double> Grid1D::trapezoid_weights() const {
  std::vector<double> w(size(), h());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

namespace {

void check_positive(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid) {
  if (!sys.positive_fields) return;
  for (std::size_t i = 0; i < f.U.size(); ++i) {
    const bool bad_u = !(f.U[i] > 0.0), bad_v = !(f.V[i] > 0.0);
    if (bad_u || bad_v) {
      std::ostringstream os;
      os << "positivity lost: " << (bad_u ? "U" : "V") << " = " << (bad_u ? f.U[i] : f.V[i])
         << " at node " << i << ", t = " << f.t;
      throw DomainError(os.str(), f.t, grid.x(i));
    }
  }
}

void check_shape(const FieldPair& f, const Grid1D& grid) {
  if (f.U.size() != grid.size() || f.V.size() != grid.size())
    throw ConfigError("field arrays must have N+1 entries");
}

// (D_{i+1/2}(w_{i+1} - w_i) - D_{i-1/2}(w_i - w_{i-1})) / h^2 with w_{-1}, w_{N+1} given.
void diffusion(const std::vector<double>& w, double p, double left_ghost, double right_ghost,
               double h, std::vector<double>& out) {
  const std::size_t n = w.size();
  std::vector<double> ext(n + 2), d(n + 2);
  ext[0] = left_ghost;
  std::copy(w.begin(), w.end(), ext.begin() + 1);
  ext[n + 1] = right_ghost;
  for (std::size_t i = 0; i < ext.size(); ++i) d[i] = real_power(ext[i], p);
  const double inv_h2 = 1.0 / (h * h);
  out.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double right = 0.5 * (d[i] + d[i + 1]) * (ext[i + 1] - ext[i]);
    const double left = 0.5 * (d[i - 1] + d[i]) * (ext[i] - ext[i - 1]);
    out[i - 1] = (right - left) * inv_h2;
  }
}

FieldPair rhs_with_ghosts(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid,
                          double uL, double uR, double vL, double vR) {
  FieldPair out;
  out.t = f.t;
  diffusion(f.U, sys.k, uL, uR, grid.h(), out.U);
  diffusion(f.V, sys.l, vL, vR, grid.h(), out.V);
  for (std::size_t i = 0; i < f.U.size(); ++i) {
    out.U[i] += sys.F(f.U[i], f.V[i]);
    out.V[i] += sys.G(f.U[i], f.V[i]);
  }
  return out;
}

}  // namespace

double stable_time_step(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid) {
  double dmax = 0.0;
  for (std::size_t i = 0; i < f.U.size(); ++i)
    dmax = std::max({dmax, real_power(f.U[i], sys.k), real_power(f.V[i], sys.l)});
  const double h = grid.h();
  if (!(dmax > 0.0)) dmax = 1.0;
  return 0.4 * h * h / dmax;
}

FieldPair discrete_rhs(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid) {
  check_shape(f, grid);
  const std::size_t n = f.U.size();
  return rhs_with_ghosts(sys, f, grid, f.U[1], f.U[n - 2], f.V[1], f.V[n - 2]);
}

FieldPair step(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  check_shape(f, grid);
  check_positive(sys, f, grid);
  const FieldPair rate = discrete_rhs(sys, f, grid);
  FieldPair next;
  next.t = f.t + dt;
  next.U.resize(f.U.size());
  next.V.resize(f.V.size());
  for (std::size_t i = 0; i < f.U.size(); ++i) {
    next.U[i] = f.U[i] + dt * rate.U[i];
    next.V[i] = f.V[i] + dt * rate.V[i];
    if (!std::isfinite(next.U[i]) || !std::isfinite(next.V[i])) {
      std::ostringstream os;
      os << "non-finite value at node " << i << ", t = " << next.t;
      throw NumericsError(os.str(), grid.x(i));
    }
  }
  check_positive(sys, next, grid);
  return next;
}

Trajectory simulate(const RDSystemOriginal& sys, const FieldPair& init, const Grid1D& grid,
                    std::optional<double> dt, double T, std::vector<double> sample_times,
                    const Observer& observer) {
  check_shape(init, grid);
  if (T < init.t) throw ConfigError("final time precedes the initial time");
  if (dt && !(*dt > 0.0)) throw ConfigError("time step must be positive");
  if (sample_times.empty()) sample_times.push_back(init.t);
  sample_times.push_back(T);
  std::sort(sample_times.begin(), sample_times.end());
  sample_times.erase(std::unique(sample_times.begin(), sample_times.end()), sample_times.end());
  sample_times.erase(std::remove_if(sample_times.begin(), sample_times.end(),
                                    [&](double s) { return s < init.t || s > T; }),
                     sample_times.end());

  Trajectory traj;
  std::size_t clamped = 0;
  double first_clamp = 0.0;
  FieldPair state = init;
  check_positive(sys, state, grid);
  auto emit = [&](const FieldPair& f) {
    traj.samples.push_back(f);
    if (observer) observer(f);
  };
  std::size_t next = 0;
  if (next < sample_times.size() && sample_times[next] == state.t) emit(state), ++next;
  while (next < sample_times.size()) {
    const double target = sample_times[next];
    const double bound = stable_time_step(sys, state, grid);
    double h = bound;
    if (dt) {
      if (*dt > bound) {
        if (clamped++ == 0) first_clamp = state.t;
      } else {
        h = *dt;
      }
    }
    bool hit = false;
    if (target - state.t <= h * (1.0 + 1e-12)) {
      h = target - state.t;
      hit = true;
    }
    if (h > 0.0) {
      state = step(sys, state, grid, h);
      ++traj.steps;
      traj.dt_min = traj.steps == 1 ? h : std::min(traj.dt_min, h);
      traj.dt_max = std::max(traj.dt_max, h);
    }
    if (hit) {
      state.t = target;
      emit(state);
      ++next;
    }
  }
  if (clamped > 0) {
    std::ostringstream os;
    os << "requested dt = " << *dt << " exceeds the stability bound; clamped on " << clamped
       << " step(s) from t = " << first_clamp;
    traj.warnings.push_back(os.str());
  }
  return traj;
}

FieldPair sample_exact(const FieldEvaluator& exact, const Grid1D& grid, double t) {
  FieldPair f;
  f.t = t;
  const auto x = grid.coordinates();
  f.U.resize(x.size());
  f.V.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const JetPoint p = exact(t, x[i]);
    f.U[i] = p.u.value;
    f.V[i] = p.v.value;
  }
  return f;
}

FieldPair sample_exact(const ExactSolution& sol, const Grid1D& grid, double t) {
  return sample_exact([&sol](double tt, double xx) { return sol.eval(tt, xx); }, grid, t);
}

Grid1D grid_for(const ExactSolution& sol, int N) { return Grid1D(sol.a, N, sol.interval_begin()); }

double residual_on_grid(const FieldEvaluator& exact, const RDSystemOriginal& sys,
                        const Grid1D& grid, double t) {
  const auto x = grid.coordinates();
  FieldPair f;
  f.t = t;
  std::vector<double> Ut(x.size()), Vt(x.size());
  f.U.resize(x.size());
  f.V.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const JetPoint p = exact(t, x[i]);
    f.U[i] = p.u.value;
    f.V[i] = p.v.value;
    Ut[i] = p.u.t;
    Vt[i] = p.v.t;
  }
  const JetPoint left = exact(t, x.front() - grid.h());
  const JetPoint right = exact(t, x.back() + grid.h());
  const FieldPair rate =
      rhs_with_ghosts(sys, f, grid, left.u.value, right.u.value, left.v.value, right.v.value);
  double defect = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    defect = std::max({defect, std::abs(Ut[i] - rate.U[i]), std::abs(Vt[i] - rate.V[i])});
  return defect;
}

double residual_on_grid(const ExactSolution& sol, const RDSystemOriginal& sys,
                        const Grid1D& grid, double t) {
  return residual_on_grid([&sol](double tt, double xx) { return sol.eval(tt, xx); }, sys, grid,
                          t);
}

ErrorNorms error_norms(const Trajectory& traj, const Grid1D& grid, const FieldEvaluator& exact,
                       double t) {
  if (traj.samples.empty()) throw ConfigError("trajectory has no samples");
  const auto& s = traj.samples;
  FieldPair numeric;
  bool interpolated = false;
  const auto it = std::lower_bound(s.begin(), s.end(), t,
                                   [](const FieldPair& f, double v) { return f.t < v; });
  if (it != s.end() && it->t == t) {
    numeric = *it;
  } else {
    if (it == s.begin() || it == s.end()) {
      std::ostringstream os;
      os << "t = " << t << " lies outside the sampled span [" << s.front().t << ", "
         << s.back().t << "]";
      throw DomainError(os.str(), t);
    }
    const FieldPair& b = *it;
    const FieldPair& a = *(it - 1);
    const double w = (t - a.t) / (b.t - a.t);
    numeric.t = t;
    numeric.U.resize(a.U.size());
    numeric.V.resize(a.V.size());
    for (std::size_t i = 0; i < a.U.size(); ++i) {
      numeric.U[i] = (1.0 - w) * a.U[i] + w * b.U[i];
      numeric.V[i] = (1.0 - w) * a.V[i] + w * b.V[i];
    }
    interpolated = true;
  }
  const FieldPair ref = sample_exact(exact, grid, t);
  const auto weights = grid.trapezoid_weights();
  ErrorNorms n;
  n.interpolated = interpolated;
  double su = 0.0, sv = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double eu = numeric.U[i] - ref.U[i], ev = numeric.V[i] - ref.V[i];
    su += weights[i] * eu * eu;
    sv += weights[i] * ev * ev;
    n.linf_U = std::max(n.linf_U, std::abs(eu));
    n.linf_V = std::max(n.linf_V, std::abs(ev));
  }
  n.l2_U = std::sqrt(su);
  n.l2_V = std::sqrt(sv);
  n.l2 = std::sqrt(su + sv);
  n.linf = std::max(n.linf_U, n.linf_V);
  return n;
}

ErrorNorms error_norms(const Trajectory& traj, const Grid1D& grid, const ExactSolution& sol,
                       double t) {
  return error_norms(traj, grid, [&sol](double tt, double xx) { return sol.eval(tt, xx); }, t);
}

double inhomogeneity_ratio(const std::vector<double>& U) {
  if (U.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(U.begin(), U.end());
  double mean = 0.0;
  for (double u : U) mean += u;
  mean /= static_cast<double>(U.size());
  return (*hi - *lo) / mean;
}

}  // namespace rdsym
