#include "rdsym/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rdsym/error.hpp"

namespace rdsym {

std::string to_string(SolutionCase c) {
  switch (c) {
    case SolutionCase::i: return "i";
    case SolutionCase::ii: return "ii";
    case SolutionCase::iii: return "iii";
  }
  return "?";
}

SolutionCase parse_solution_case(const std::string& text) {
  if (text == "i" || text == "1") return SolutionCase::i;
  if (text == "ii" || text == "2") return SolutionCase::ii;
  if (text == "iii" || text == "3") return SolutionCase::iii;
  throw ConfigError("unknown solution case '" + text + "' (expected i, ii or iii)");
}

double alpha2_constraint(double alpha1, double beta2, double beta1, int j1, int j2) {
  if (beta1 == 0.0) throw ConfigError("beta1 != 0 is required");
  if (j1 < 1 || j2 < 1) throw ConfigError("mode indices j1, j2 must be positive");
  const double a = static_cast<double>(j1) * j1;
  const double b = static_cast<double>(j2) * j2;
  return (alpha1 * b - beta2 * a) * (beta2 * b - alpha1 * a) / ((a + b) * (a + b) * beta1);
}

std::pair<double, double> steady_state(double lambda1, double lambda3, double k, double l) {
  auto root = [](double lambda, double p, const char* name) {
    if (p + 1.0 == 0.0) throw ConfigError("(k+1)(l+1) != 0 is required");
    const double e = 1.0 / (p + 1.0);
    if (lambda <= 0.0 && e != std::round(e)) {
      std::ostringstream os;
      os << name << " = " << lambda << " has no real power 1/" << (p + 1.0);
      throw DomainError(os.str());
    }
    return real_power(lambda, e);
  };
  return {root(lambda1, k, "lambda1"), root(lambda3, l, "lambda3")};
}

namespace {

struct BaseMinimum {
  double depth = 0.0;  // -min of the profile over the interval (>= 0 when any mode is present)
  double x = 0.0;
};

// Single mode A cos(w x) on [0, a] with a >= pi/w: minimum -|A|.
BaseMinimum single_mode_minimum(const TrigProfile::Mode& m) {
  const double A = m.cos_amplitude;
  return {std::abs(A), A > 0.0 ? std::numbers::pi / m.frequency : 0.0};
}

BaseMinimum profile_minimum(const TrigProfile& p) {
  const auto& modes = p.modes();
  if (modes.empty()) return {};
  if (modes.size() == 1) return single_mode_minimum(modes.front());
  BaseMinimum out;
  out.depth = p.amplitude_bound();
  // location reported for the dominant mode
  const auto dom = std::max_element(modes.begin(), modes.end(), [](const auto& a, const auto& b) {
    return std::abs(a.cos_amplitude) < std::abs(b.cos_amplitude);
  });
  out.x = single_mode_minimum(*dom).x;
  return out;
}

// Largest t with lambda - depth e^{-rt} > 0.
double window_end(double lambda, double depth, double r, double x, const char* field) {
  if (lambda - depth <= 0.0) {
    std::ostringstream os;
    os << "base of " << field << " is not strictly positive at t = 0 (lambda = " << lambda
       << ", profile minimum = " << -depth << ")";
    throw DomainError(os.str(), 0.0, x);
  }
  if (r >= 0.0 || depth == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(lambda / depth) / (-r);
}

TrigProfile drop_empty(const TrigProfile& p) {
  std::vector<TrigProfile::Mode> kept;
  for (const auto& m : p.modes())
    if (m.cos_amplitude != 0.0 || m.sin_amplitude != 0.0) kept.push_back(m);
  return TrigProfile(std::move(kept));
}

}  // namespace

ExactSolution build_exact(const ExactParams& params) {
  if ((params.k + 1.0) * (params.l + 1.0) == 0.0)
    throw ConfigError("(k+1)(l+1) != 0 is required");
  if (params.beta1 == 0.0) throw ConfigError("beta1 != 0 is required");
  if (params.j1 < 1) throw ConfigError("j1 must be a positive integer");

  ExactSolution sol;
  sol.params = params;
  const double pi = std::numbers::pi;

  if (params.case_id == SolutionCase::iii) {
    if (params.j2 < 1) throw ConfigError("j2 must be a positive integer");
    const double sigma = -(params.alpha1 + params.beta2);
    if (sigma <= 0.0) throw ConfigError("case iii requires alpha1 + beta2 < 0");
    const double derived =
        alpha2_constraint(params.alpha1, params.beta2, params.beta1, params.j1, params.j2);
    if (params.alpha2 && std::abs(*params.alpha2 - derived) > 1e-12 * std::max(1.0, std::abs(derived))) {
      std::ostringstream os;
      os << "alpha2 = " << *params.alpha2 << " violates the mode constraint (expected " << derived
         << ")";
      throw ConfigError(os.str());
    }
    sol.alpha2 = derived;
    const double j1 = params.j1, j2 = params.j2;
    const double norm = std::sqrt(j1 * j1 + j2 * j2);
    sol.s1_mod = j2 * std::sqrt(sigma) / norm;
    sol.s3_mod = j1 / j2 * sol.s1_mod;
    sol.a = pi * norm / std::sqrt(sigma);
    const double c1 = -(params.alpha1 + sol.s1_mod * sol.s1_mod) / params.beta1;
    const double c3 = -(params.alpha1 + sol.s3_mod * sol.s3_mod) / params.beta1;
    sol.profiles.phi = TrigProfile({{sol.s1_mod, params.A1, 0.0}, {sol.s3_mod, params.A3, 0.0}});
    sol.profiles.psi =
        TrigProfile({{sol.s1_mod, c1 * params.A1, 0.0}, {sol.s3_mod, c3 * params.A3, 0.0}});
    if (params.j1 == params.j2) sol.notes.push_back("j1 = j2: the two modes coincide");
    if (derived == 0.0) sol.notes.push_back("alpha2 = 0: the coupling degenerates");
  } else {
    if (!params.alpha2) throw ConfigError("alpha2 is required for cases i and ii");
    sol.alpha2 = *params.alpha2;
    const SpectralData spec =
        quartic_spectrum(params.alpha1, params.beta1, sol.alpha2, params.beta2);
    if (!spec.purely_imaginary)
      throw ConfigError("the characteristic roots are not purely imaginary");
    if (spec.degenerate) throw ConfigError("the characteristic roots are not distinct");
    sol.s1_mod = spec.s1_mod;
    sol.s3_mod = spec.s3_mod;
    const bool first = params.case_id == SolutionCase::i;
    const double w = first ? spec.s1_mod : spec.s3_mod;
    const double A = first ? params.A1 : params.A3;
    sol.a = pi * params.j1 / w;
    const double c = -(params.alpha1 + w * w) / params.beta1;
    sol.profiles.phi = TrigProfile({{w, A, 0.0}});
    sol.profiles.psi = TrigProfile({{w, c * A, 0.0}});
  }
  if (sol.alpha2 == 0.0 && params.case_id != SolutionCase::iii)
    sol.notes.push_back("alpha2 = 0: the coupling degenerates");

  sol.profiles.phi = drop_empty(sol.profiles.phi);
  sol.profiles.psi = drop_empty(sol.profiles.psi);
  const BaseMinimum mu = profile_minimum(sol.profiles.phi);
  const BaseMinimum mv = profile_minimum(sol.profiles.psi);
  sol.window.x_min_U = mu.x;
  sol.window.x_min_V = mv.x;
  sol.window.t_max_U = window_end(params.lambda1, mu.depth, params.r, mu.x, "U");
  sol.window.t_max_V = window_end(params.lambda3, mv.depth, params.r, mv.x, "V");
  sol.window.t_max = std::min(sol.window.t_max_U, sol.window.t_max_V);
  return sol;
}

JetPoint ExactSolution::eval(double t, double x) const {
  if (t >= window.t_max) {
    std::ostringstream os;
    os << "t = " << t << " is outside the positivity window [0, " << window.t_max << ")";
    const double xv = window.t_max_U <= window.t_max_V ? window.x_min_U : window.x_min_V;
    throw DomainError(os.str(), window.t_max, xv - shift);
  }
  const double xs = x + shift;
  const double decay = std::exp(-params.r * t);
  auto field = [&](const TrigProfile& prof, double lambda, double p) {
    const Jet1 j = prof.jet(xs);
    const FieldJet base{j.value * decay + lambda, -params.r * j.value * decay, j.d1 * decay,
                        j.d2 * decay};
    if (base.value <= 0.0) {
      std::ostringstream os;
      os << "base " << base.value << " is not strictly positive";
      throw DomainError(os.str(), t, x);
    }
    return power_of(base, 1.0 / (p + 1.0));
  };
  JetPoint out;
  out.t = t;
  out.x = x;
  out.u = field(profiles.phi, params.lambda1, params.k);
  out.v = field(profiles.psi, params.lambda3, params.l);
  return out;
}

LinearReductionParams ExactSolution::linear_params() const {
  LinearReductionParams p;
  p.alpha1 = params.alpha1;
  p.beta1 = params.beta1;
  p.alpha2 = alpha2;
  p.beta2 = params.beta2;
  p.r = params.r;
  p.k = params.k;
  p.l = params.l;
  p.lambda1 = params.lambda1;
  p.lambda3 = params.lambda3;
  return p;
}

std::vector<AdmissibleInterval> admissible_intervals(SolutionCase c, const SpectralData& spec,
                                                     double alpha1, double beta2, int count) {
  if (count < 1) throw ConfigError("count must be positive");
  std::vector<AdmissibleInterval> out;
  const double pi = std::numbers::pi;
  if (c == SolutionCase::iii) {
    const double sigma = -(alpha1 + beta2);
    if (sigma <= 0.0) throw ConfigError("case iii requires alpha1 + beta2 < 0");
    for (int j1 = 1; j1 <= count; ++j1)
      for (int j2 = 1; j2 <= count; ++j2)
        out.push_back({pi * std::sqrt(double(j1 * j1 + j2 * j2)) / std::sqrt(sigma), j1, j2});
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      const int na = a.j1 * a.j1 + a.j2 * a.j2, nb = b.j1 * b.j1 + b.j2 * b.j2;
      return na != nb ? na < nb : a.j1 < b.j1;
    });
    out.resize(static_cast<std::size_t>(count));
    return out;
  }
  if (!spec.purely_imaginary)
    throw ConfigError("the characteristic roots are not purely imaginary");
  const double w = c == SolutionCase::i ? spec.s1_mod : spec.s3_mod;
  for (int j = 1; j <= count; ++j) out.push_back({pi * j / w, j, 0});
  return out;
}

double NeumannFluxes::max_abs() const {
  return std::max({std::abs(U_left), std::abs(V_left), std::abs(U_right), std::abs(V_right)});
}

NeumannFluxes neumann_residual(const ExactSolution& sol, double t) {
  const JetPoint l = sol.eval(t, sol.interval_begin());
  const JetPoint r = sol.eval(t, sol.interval_end());
  return {l.u.x, l.v.x, r.u.x, r.v.x};
}

ExactSolution translate(const ExactSolution& sol, double x0) {
  ExactSolution out = sol;
  out.shift = sol.shift + x0;
  return out;
}

}  // namespace rdsym
