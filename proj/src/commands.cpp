#include "rdsym/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "rdsym/detcheck.hpp"
#include "rdsym/error.hpp"
#include "rdsym/exact_solutions.hpp"
#include "rdsym/families.hpp"
#include "rdsym/pdesim.hpp"
#include "rdsym/reduction.hpp"

namespace rdsym {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class Report {
public:
  void line(const std::string& text) { os_ << text << '\n'; }
  void value(const std::string& key, double v) { os_ << key << " = " << format_number(v) << '\n'; }
  void value(const std::string& key, const std::string& v) { os_ << key << " = " << v << '\n'; }
  void flag(const std::string& key, bool v) { value(key, v ? "true" : "false"); }
  std::string str() const { return os_.str(); }

private:
  std::ostringstream os_;
};

class Csv {
public:
  explicit Csv(const std::string& header) { os_ << header << '\n'; }
  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) os_ << ',';
      os_ << format_number(v);
      first = false;
    }
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

private:
  std::ostringstream os_;
};

const char* status(bool ok) { return ok ? "pass" : "fail"; }

RunOutcome verify_symmetry(const RunConfig& cfg) {
  const FamilyParams fp = family_params(cfg);
  const Family fam = build_family(fp);
  const double tol = cfg.tol.value_or(default_tolerance(fam.op, fam.transformed));
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> grad(-2.0, 2.0);
  double det = 0.0, inv = 0.0, split = 0.0;
  Csv csv("t,x,u,v,u_x,v_x,determining,R1,R2");
  for (int i = 0; i < cfg.points; ++i) {
    const BasePoint pt = sample_base_point(fp, rng);
    const DeterminingReport rep = determining_residuals(fam.op, fam.transformed, pt);
    JetPoint jp;
    jp.t = pt.t;
    jp.x = pt.x;
    jp.u.value = pt.u;
    jp.v.value = pt.v;
    jp.u.x = grad(rng);
    jp.v.x = grad(rng);
    const ResidualPair R = invariance_residual(fam.op, fam.transformed, jp);
    const MonomialTable table = split_in_gradients(fam.op, fam.transformed, pt);
    det = std::max(det, rep.max_abs);
    inv = std::max(inv, R.max_abs());
    split = std::max(split, table.max_abs());
    csv.row({pt.t, pt.x, pt.u, pt.v, jp.u.x, jp.v.x, rep.max_abs, R.first, R.second});
  }
  const bool ok = det <= tol && inv <= tol && split <= tol;
  Report r;
  r.line(describe_family(fp));
  r.value("points", static_cast<double>(cfg.points));
  r.value("max determining residual", det);
  r.value("max invariance residual", inv);
  r.value("max gradient-monomial coefficient", split);
  r.value("tolerance", tol);
  r.value("status", status(ok));
  return {ok ? 0 : 4, r.str(), {{"verify.csv", csv.str()}}};
}

// Smooth, non-solution trial profiles; positive on the sampled region.
AnsatzProfile trial_profiles(const FamilyParams& fp) {
  AnsatzProfile a;
  a.params = fp;
  a.phi = Profile([](double x) {
    return Jet1{1.5 + 0.3 * std::sin(x), 0.3 * std::cos(x), -0.3 * std::sin(x)};
  });
  a.psi = Profile([](double x) {
    const double w = 1.3;
    return Jet1{1.2 + 0.2 * std::cos(w * x), -0.2 * w * std::sin(w * x),
                -0.2 * w * w * std::cos(w * x)};
  });
  return a;
}

RunOutcome reduce(const RunConfig& cfg) {
  const FamilyParams fp = family_params(cfg);
  const Family fam = build_family(fp);
  const AnsatzProfile a = trial_profiles(fp);
  const double tol = cfg.tol.value_or(1e-9);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double identity = 0.0, reduced = 0.0, surface = 0.0;
  Csv csv("t,x,r1,r2,rho1,rho2,mu1,mu2");
  for (int i = 0; i < cfg.points; ++i) {
    const BasePoint pt = sample_base_point(fp, rng);
    const double t = 0.5 * unit(rng);
    const JetPoint UV = ansatz_eval(a, t, pt.x);
    const ResidualPair orig = original_residual(fam.system, UV);
    const ResidualPair rho = reduced_ode_residual(a, pt.x);
    const ResidualPair mu = reduction_multipliers(a, t, pt.x);
    const ResidualPair q = invariant_surface_residual(fam, UV);
    const double scale = std::max({1.0, std::abs(orig.first), std::abs(orig.second)});
    identity = std::max({identity, std::abs(orig.first - mu.first * rho.first) / scale,
                         std::abs(orig.second - mu.second * rho.second) / scale});
    reduced = std::max(reduced, rho.max_abs());
    surface = std::max(surface, q.max_abs());
    csv.row({t, pt.x, orig.first, orig.second, rho.first, rho.second, mu.first, mu.second});
  }
  const bool ok = identity <= tol && surface <= tol;
  Report r;
  r.line(describe_family(fp));
  r.line("trial profiles: phi = 1.5 + 0.3 sin x, psi = 1.2 + 0.2 cos 1.3x");
  r.value("points", static_cast<double>(cfg.points));
  r.value("max |reduced residual|", reduced);
  r.value("max relative |r - mu rho|", identity);
  r.value("max invariant-surface residual", surface);
  r.value("tolerance", tol);
  r.value("status", status(ok));
  return {ok ? 0 : 4, r.str(), {{"reduce.csv", csv.str()}}};
}

RunOutcome spectrum(const RunConfig& cfg) {
  const double alpha2 = cfg.alpha2.value_or(-2.0);
  const SpectralData s = quartic_spectrum(cfg.alpha1, cfg.beta1, alpha2, cfg.beta2);
  const double agreement =
      root_set_distance(quartic_roots_closed_form(cfg.alpha1, cfg.beta1, alpha2, cfg.beta2),
                        quartic_roots_companion(cfg.alpha1, cfg.beta1, alpha2, cfg.beta2));
  Report r;
  r.line("characteristic quartic s^4 - (alpha1 + beta2) s^2 + alpha1 beta2 - alpha2 beta1");
  r.value("s1_mod", s.s1_mod);
  r.value("s3_mod", s.s3_mod);
  r.flag("purely_imaginary", s.purely_imaginary);
  r.flag("degenerate", s.degenerate);
  r.value("discriminant", s.discriminant);
  r.value("method", s.method);
  r.value("closed form vs companion", agreement);
  Csv csv("index,re,im");
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    csv.row({static_cast<double>(i + 1), s.roots[i].real(), s.roots[i].imag()});
    r.value("root" + std::to_string(i + 1),
            format_number(s.roots[i].real()) + " + " + format_number(s.roots[i].imag()) + "i");
  }
  return {0, r.str(), {{"spectrum.csv", csv.str()}}};
}

std::vector<double> sample_times(const RunConfig& cfg, int default_count) {
  if (!cfg.samples.empty()) return cfg.samples;
  std::vector<double> out;
  for (int i = 0; i <= default_count; ++i) out.push_back(cfg.T * i / default_count);
  return out;
}

double residual_horizon(const ExactSolution& sol, double T) {
  return sol.window.finite() ? std::min(T, 0.9 * sol.window.t_max) : T;
}

double pointwise_residual(const ExactSolution& sol, const RDSystemOriginal& sys, double T,
                          int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double horizon = residual_horizon(sol, T);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = horizon * unit(rng);
    const double x = sol.interval_begin() + sol.a * unit(rng);
    worst = std::max(worst, original_residual(sys, sol.eval(t, x)).max_abs());
  }
  return worst;
}

void describe_exact(Report& r, const ExactSolution& sol) {
  r.value("case", to_string(sol.params.case_id));
  r.value("alpha2", sol.alpha2);
  r.value("s1_mod", sol.s1_mod);
  r.value("s3_mod", sol.s3_mod);
  r.value("a", sol.a);
  r.value("t_max", sol.window.t_max);
  r.value("t_max_U", sol.window.t_max_U);
  r.value("t_max_V", sol.window.t_max_V);
  for (const auto& n : sol.notes) r.line("note: " + n);
}

RunOutcome exact(const RunConfig& cfg) {
  const ExactSolution sol = build_exact(exact_params(cfg));
  const LinearSystem lin = specialize_linear(sol.linear_params());
  const double tol = cfg.tol.value_or(1e-9);
  Report r;
  describe_exact(r, sol);
  const JetPoint origin = sol.eval(0.0, sol.interval_begin());
  r.value("U(0, x0)", origin.u.value);
  r.value("V(0, x0)", origin.v.value);
  const auto [Us, Vs] = steady_state(sol.params.lambda1, sol.params.lambda3, sol.params.k,
                                     sol.params.l);
  r.value("steady state U", Us);
  r.value("steady state V", Vs);
  const double pde = pointwise_residual(sol, lin.system, cfg.T, cfg.points, cfg.seed);
  const double flux = std::max(neumann_residual(sol, 0.0).max_abs(),
                               neumann_residual(sol, residual_horizon(sol, cfg.T)).max_abs());
  r.value("max PDE residual", pde);
  r.value("max boundary flux", flux);
  const bool ok = pde <= tol && flux <= 1e-12;
  r.value("tolerance", tol);
  r.value("status", status(ok));

  const Grid1D grid = grid_for(sol, cfg.N);
  Csv csv("t,x,U,V,U_t,U_x,U_xx,V_t,V_x,V_xx");
  for (double t : sample_times(cfg, 1)) {
    if (t >= sol.window.t_max) continue;
    for (double x : grid.coordinates()) {
      const JetPoint p = sol.eval(t, x);
      csv.row({t, x, p.u.value, p.v.value, p.u.t, p.u.x, p.u.xx, p.v.t, p.v.x, p.v.xx});
    }
  }
  return {ok ? 0 : 4, r.str(), {{"exact.csv", csv.str()}}};
}

RunOutcome intervals(const RunConfig& cfg) {
  const SpectralData s =
      quartic_spectrum(cfg.alpha1, cfg.beta1, cfg.alpha2.value_or(-2.0), cfg.beta2);
  const auto list = admissible_intervals(cfg.solution_case, s, cfg.alpha1, cfg.beta2, cfg.count);
  Report r;
  r.value("case", to_string(cfg.solution_case));
  Csv csv("index,j1,j2,a");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& iv = list[i];
    std::string label = "a[" + std::to_string(i + 1) + "] (j1 = " + std::to_string(iv.j1);
    if (cfg.solution_case == SolutionCase::iii) label += ", j2 = " + std::to_string(iv.j2);
    r.value(label + ")", iv.a);
    csv.row({static_cast<double>(i + 1), static_cast<double>(iv.j1), static_cast<double>(iv.j2),
             iv.a});
  }
  return {0, r.str(), {{"intervals.csv", csv.str()}}};
}

Grid1D simulation_grid(const RunConfig& cfg, const ExactSolution& sol, int N) {
  return cfg.a ? Grid1D(*cfg.a, N, sol.interval_begin()) : grid_for(sol, N);
}

RunOutcome simulate_cmd(const RunConfig& cfg) {
  const ExactSolution sol = build_exact(exact_params(cfg));
  const LinearSystem lin = specialize_linear(sol.linear_params());
  const Grid1D grid = simulation_grid(cfg, sol, cfg.N);
  Report r;
  describe_exact(r, sol);
  r.value("N", static_cast<double>(grid.cells()));
  r.value("h", grid.h());
  Csv csv("t,x,U,V,U_exact,V_exact");
  const auto x = grid.coordinates();
  auto observe = [&](const FieldPair& f) {
    const bool exact_known = f.t < sol.window.t_max;
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ue = NAN, ve = NAN;
      if (exact_known) {
        const JetPoint p = sol.eval(f.t, x[i]);
        ue = p.u.value;
        ve = p.v.value;
        err = std::max({err, std::abs(f.U[i] - ue), std::abs(f.V[i] - ve)});
      }
      csv.row({f.t, x[i], f.U[i], f.V[i], ue, ve});
    }
    const auto [lo, hi] = std::minmax_element(f.U.begin(), f.U.end());
    std::ostringstream os;
    os << "t = " << format_number(f.t) << ": max error = " << format_number(err)
       << ", inhomogeneity(U) = " << format_number(inhomogeneity_ratio(f.U))
       << ", min U = " << format_number(*lo) << ", max U = " << format_number(*hi);
    r.line(os.str());
  };
  int code = 0;
  try {
    const Trajectory traj = simulate(lin.system, sample_exact(sol, grid, 0.0), grid, cfg.dt,
                                     cfg.T, sample_times(cfg, 10), observe);
    r.value("steps", static_cast<double>(traj.steps));
    r.value("dt_min", traj.dt_min);
    r.value("dt_max", traj.dt_max);
    for (const auto& w : traj.warnings) r.line("warning: " + w);
  } catch (const DomainError& e) {
    r.line(std::string("positivity guard: ") + e.what());
    if (e.t()) r.value("guard t", *e.t());
    if (e.x()) r.value("guard x", *e.x());
    code = e.exit_code();
  }
  return {code, r.str(), {{"simulate.csv", csv.str()}}};
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

RunOutcome residual_cmd(const RunConfig& cfg) {
  const ExactSolution sol = build_exact(exact_params(cfg));
  const LinearSystem lin = specialize_linear(sol.linear_params());
  const double t = residual_horizon(sol, cfg.T);
  const double tol = cfg.tol.value_or(1e-9);
  Report r;
  describe_exact(r, sol);
  r.value("t", t);
  Csv csv("N,h,defect,order");
  double prev = 0.0, order = 0.0;
  for (int i = 0; i < cfg.levels; ++i) {
    const Grid1D grid = simulation_grid(cfg, sol, cfg.N << i);
    const double d = residual_on_grid(sol, lin.system, grid, t);
    order = i > 0 ? observed_order(prev, d) : NAN;
    csv.row({static_cast<double>(grid.cells()), grid.h(), d, order});
    std::ostringstream os;
    os << "N = " << grid.cells() << ": grid defect = " << format_number(d);
    if (i > 0) os << ", order = " << format_number(order);
    r.line(os.str());
    prev = d;
  }
  const double pde = pointwise_residual(sol, lin.system, cfg.T, cfg.points, cfg.seed);
  r.value("max pointwise PDE residual", pde);
  const bool ok = pde <= tol && std::abs(order - 2.0) <= 0.2;
  r.value("status", status(ok));
  return {ok ? 0 : 4, r.str(), {{"residual.csv", csv.str()}}};
}

RunOutcome convergence(const RunConfig& cfg) {
  const ExactSolution sol = build_exact(exact_params(cfg));
  const LinearSystem lin = specialize_linear(sol.linear_params());
  Report r;
  describe_exact(r, sol);
  r.value("T", cfg.T);
  Csv csv("N,h,dt_max,linf,l2,order");
  double prev = 0.0, order = NAN;
  for (int i = 0; i < cfg.levels; ++i) {
    const Grid1D grid = simulation_grid(cfg, sol, cfg.N << i);
    std::optional<double> dt;
    if (cfg.dt) dt = *cfg.dt / std::pow(4.0, i);
    const Trajectory traj =
        simulate(lin.system, sample_exact(sol, grid, 0.0), grid, dt, cfg.T, {0.0});
    const ErrorNorms e = error_norms(traj, grid, sol, cfg.T);
    order = i > 0 ? observed_order(prev, e.linf) : NAN;
    csv.row({static_cast<double>(grid.cells()), grid.h(), traj.dt_max, e.linf, e.l2, order});
    std::ostringstream os;
    os << "N = " << grid.cells() << ": Linf error = " << format_number(e.linf)
       << ", L2 error = " << format_number(e.l2);
    if (i > 0) os << ", order = " << format_number(order);
    r.line(os.str());
    for (const auto& w : traj.warnings) r.line("warning: " + w);
    prev = e.linf;
  }
  const bool ok = std::abs(order - 2.0) <= 0.2;
  r.value("observed order", order);
  r.value("status", status(ok));
  return {ok ? 0 : 4, r.str(), {{"convergence.csv", csv.str()}}};
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "verify-symmetry") return verify_symmetry(cfg);
  if (c == "reduce") return reduce(cfg);
  if (c == "spectrum") return spectrum(cfg);
  if (c == "exact") return exact(cfg);
  if (c == "intervals") return intervals(cfg);
  if (c == "simulate") return simulate_cmd(cfg);
  if (c == "residual") return residual_cmd(cfg);
  if (c == "convergence") return convergence(cfg);
  throw ConfigError("unknown command '" + c + "'");
}

void write_artifacts(const RunOutcome& outcome, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (fs::path(dir) / name).string());
    out << content;
  };
  write("report.txt", outcome.report);
  for (const auto& [name, content] : outcome.files) write(name, content);
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool quiet) {
  try {
    const RunOutcome outcome = run(cfg);
    if (!quiet) out << outcome.report;
    if (!cfg.out.empty()) write_artifacts(outcome, cfg.out);
    return outcome.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  }
}

}  // namespace rdsym
