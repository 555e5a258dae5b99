#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rdsym/core_model.hpp"
#include "rdsym/reduction.hpp"

namespace rdsym {

/// (i) single mode |s1|, (ii) single mode |s3|, (iii) two commensurate modes.
enum class SolutionCase { i, ii, iii };

std::string to_string(SolutionCase c);
/// Accepts "i", "ii", "iii" (also "1", "2", "3").
SolutionCase parse_solution_case(const std::string& text);

struct ExactParams {
  SolutionCase case_id = SolutionCase::i;
  double k = 1.0;
  double l = 1.0;
  double r = 2.0;
  double lambda1 = 1.0;
  double lambda3 = 2.0;
  double alpha1 = -2.0;
  double beta1 = -1.0;
  /// Required for cases (i), (ii); derived (and checked if given) for case (iii).
  std::optional<double> alpha2 = -2.0;
  double beta2 = -2.0;
  double A1 = 0.95;
  double A3 = 0.0;
  /// Interval index for (i)/(ii); mode pair for (iii).
  int j1 = 1;
  int j2 = 1;
};

/// Time span on which every fractional-power base stays strictly positive.
struct ValidityWindow {
  double t_max = std::numeric_limits<double>::infinity();
  double t_max_U = std::numeric_limits<double>::infinity();
  double t_max_V = std::numeric_limits<double>::infinity();
  /// Where the base of U (V) attains its minimum over the interval.
  double x_min_U = 0.0;
  double x_min_V = 0.0;

  bool finite() const { return std::isfinite(t_max); }
};

/// Periodic exact solution U = (phi e^{-rt} + lambda1)^{1/(k+1)},
/// V = (psi e^{-rt} + lambda3)^{1/(l+1)} with zero flux on its interval.
struct ExactSolution {
  ExactParams params;
  /// Effective coupling (given for i/ii, from the mode constraint for iii).
  double alpha2 = 0.0;
  /// Mode frequencies. For (iii): s1_mod = j2 sqrt(-(a1+b2)) / sqrt(j1^2+j2^2),
  /// s3_mod = (j1/j2) s1_mod.
  double s1_mod = 0.0;
  double s3_mod = 0.0;
  /// Interval length; the solution lives on [-shift, a - shift].
  double a = 0.0;
  double shift = 0.0;
  ReducedSolution profiles;
  ValidityWindow window;
  std::vector<std::string> notes;

  double interval_begin() const { return -shift; }
  double interval_end() const { return a - shift; }

  /// (U, V) with analytic t, x, xx derivatives. Throws DomainError (with t, x)
  /// outside the validity window.
  JetPoint eval(double t, double x) const;

  /// Parameters of the parent reaction-diffusion system.
  LinearReductionParams linear_params() const;
};

ExactSolution build_exact(const ExactParams& params);

struct AdmissibleInterval {
  double a = 0.0;
  int j1 = 1;
  int j2 = 0;
};

/// First `count` admissible interval lengths, ascending. Case (iii) enumerates
/// (j1, j2) by j1^2 + j2^2, ties by j1.
std::vector<AdmissibleInterval> admissible_intervals(SolutionCase c, const SpectralData& spec,
                                                     double alpha1, double beta2, int count);

/// (U_x, V_x) at both ends of the interval.
struct NeumannFluxes {
  double U_left = 0.0;
  double V_left = 0.0;
  double U_right = 0.0;
  double V_right = 0.0;

  double max_abs() const;
};

NeumannFluxes neumann_residual(const ExactSolution& sol, double t);

/// alpha2 = (a1 j2^2 - b2 j1^2)(b2 j2^2 - a1 j1^2) / ((j1^2 + j2^2)^2 b1).
double alpha2_constraint(double alpha1, double beta2, double beta1, int j1, int j2);

/// (lambda1^{1/(k+1)}, lambda3^{1/(l+1)}).
std::pair<double, double> steady_state(double lambda1, double lambda3, double k, double l);

/// Same solution on [-x0, a - x0].
ExactSolution translate(const ExactSolution& sol, double x0);

}  // namespace rdsym
