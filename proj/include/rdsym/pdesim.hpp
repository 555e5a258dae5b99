#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rdsym/core_model.hpp"
#include "rdsym/exact_solutions.hpp"

namespace rdsym {

/// N cells on [origin, origin + a]; nodes x_i = origin + i h, i = 0..N.
class Grid1D {
public:
  /// Throws ConfigError unless a > 0 and N >= 8.
  Grid1D(double a, int N, double origin = 0.0);

  double length() const { return a_; }
  int cells() const { return N_; }
  std::size_t size() const { return static_cast<std::size_t>(N_) + 1; }
  double h() const { return a_ / N_; }
  double origin() const { return origin_; }
  double x(std::size_t i) const { return origin_ + h() * static_cast<double>(i); }
  std::vector<double> coordinates() const;
  std::vector<double> trapezoid_weights() const;

private:
  double a_;
  int N_;
  double origin_;
};

struct FieldPair {
  double t = 0.0;
  std::vector<double> U;
  std::vector<double> V;
};

/// 0.4 h^2 / max_i max(U_i^k, V_i^l).
double stable_time_step(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid);

/// Conservative explicit update with arithmetic-mean interface diffusivity and
/// ghost reflection at both ends. Throws DomainError (node index, time) when a
/// field leaves the positive cone of a positive-field system.
FieldPair step(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid, double dt);

/// Discrete right-hand side (diffusion + reaction) at every node.
FieldPair discrete_rhs(const RDSystemOriginal& sys, const FieldPair& f, const Grid1D& grid);

struct Trajectory {
  std::vector<FieldPair> samples;
  std::vector<std::string> warnings;
  std::size_t steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
};

using Observer = std::function<void(const FieldPair&)>;

/// Steps from init.t to T. Every sample time in [init.t, T] is hit exactly
/// (T itself is always sampled, init.t whenever listed or when no times are given).
/// A requested dt above the stability bound is clamped and recorded in warnings;
/// without a request the bound is used each step.
Trajectory simulate(const RDSystemOriginal& sys, const FieldPair& init, const Grid1D& grid,
                    std::optional<double> dt, double T, std::vector<double> sample_times = {},
                    const Observer& observer = {});

using FieldEvaluator = std::function<JetPoint(double t, double x)>;

/// Exact node values at time t.
FieldPair sample_exact(const FieldEvaluator& exact, const Grid1D& grid, double t);
FieldPair sample_exact(const ExactSolution& sol, const Grid1D& grid, double t);

/// Grid covering the solution's own interval.
Grid1D grid_for(const ExactSolution& sol, int N);

/// max_i |U_t - D_h(U) - F| over both fields, with U_t exact and D_h the
/// simulator's conservative operator applied to exact node and ghost values.
double residual_on_grid(const FieldEvaluator& exact, const RDSystemOriginal& sys,
                        const Grid1D& grid, double t);
double residual_on_grid(const ExactSolution& sol, const RDSystemOriginal& sys,
                        const Grid1D& grid, double t);

struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
  double l2_U = 0.0;
  double linf_U = 0.0;
  double l2_V = 0.0;
  double linf_V = 0.0;
  /// t fell between samples; numeric fields were linearly interpolated.
  bool interpolated = false;
};

/// Trapezoid-weighted L2 and max norms of (numeric - exact) at time t.
ErrorNorms error_norms(const Trajectory& traj, const Grid1D& grid, const FieldEvaluator& exact,
                       double t);
ErrorNorms error_norms(const Trajectory& traj, const Grid1D& grid, const ExactSolution& sol,
                       double t);

/// (max - min) / mean of U.
double inhomogeneity_ratio(const std::vector<double>& U);

}  // namespace rdsym
