#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdsym/commands.hpp"
#include "rdsym/config.hpp"
#include "rdsym/detcheck.hpp"
#include "rdsym/error.hpp"
#include "rdsym/exact_solutions.hpp"
#include "rdsym/families.hpp"
#include "rdsym/pdesim.hpp"
#include "rdsym/reduction.hpp"

namespace py = pybind11;
using namespace rdsym;

namespace {

py::dict jet_dict(const JetPoint& p) {
  py::dict d;
  d["U"] = p.u.value;
  d["U_t"] = p.u.t;
  d["U_x"] = p.u.x;
  d["U_xx"] = p.u.xx;
  d["V"] = p.v.value;
  d["V_t"] = p.v.t;
  d["V_x"] = p.v.x;
  d["V_xx"] = p.v.xx;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rdsym, m) {
  m.doc() = "Symmetry checks, exact solutions and simulation for power-diffusivity "
            "reaction-diffusion systems";

  static py::exception<Error> base(m, "RdsymError");
  static py::exception<ConfigError> config_error(m, "ConfigError", base.ptr());
  static py::exception<DomainError> domain_error(m, "DomainError", base.ptr());
  static py::exception<ToleranceError> tolerance_error(m, "ToleranceError", base.ptr());
  static py::exception<NumericsError> numerics_error(m, "NumericsError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const ToleranceError& e) {
      py::set_error(tolerance_error, e.what());
    } catch (const NumericsError& e) {
      py::set_error(numerics_error, e.what());
    }
  });

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("roots", &SpectralData::roots)
      .def_readonly("s1_mod", &SpectralData::s1_mod)
      .def_readonly("s3_mod", &SpectralData::s3_mod)
      .def_readonly("purely_imaginary", &SpectralData::purely_imaginary)
      .def_readonly("degenerate", &SpectralData::degenerate)
      .def_readonly("discriminant", &SpectralData::discriminant)
      .def_readonly("method", &SpectralData::method);

  m.def("quartic_spectrum", &quartic_spectrum, py::arg("alpha1"), py::arg("beta1"),
        py::arg("alpha2"), py::arg("beta2"));
  m.def("quartic_roots_companion", &quartic_roots_companion, py::arg("alpha1"),
        py::arg("beta1"), py::arg("alpha2"), py::arg("beta2"));
  m.def("alpha2_constraint", &alpha2_constraint, py::arg("alpha1"), py::arg("beta2"),
        py::arg("beta1"), py::arg("j1"), py::arg("j2"));
  m.def("steady_state", &steady_state, py::arg("lambda1"), py::arg("lambda3"), py::arg("k"),
        py::arg("l"));

  m.def(
      "linear_reaction_terms",
      [](double alpha1, double beta1, double alpha2, double beta2, double r, double k, double l,
         double lambda1, double lambda3) {
        const LinearSystem s = specialize_linear(
            LinearReductionParams{alpha1, beta1, alpha2, beta2, r, k, l, lambda1, lambda3});
        auto terms = [](const ReactionTerms& t) {
          py::dict d;
          d["self_linear"] = t.self_linear;
          d["self_power"] = t.self_power;
          d["cross_power"] = t.cross_power;
          d["self_inverse"] = t.self_inverse;
          d["constant"] = t.constant;
          return d;
        };
        return py::make_tuple(terms(s.F_terms), terms(s.G_terms));
      },
      py::arg("alpha1") = -2.0, py::arg("beta1") = -1.0, py::arg("alpha2") = -2.0,
      py::arg("beta2") = -2.0, py::arg("r") = 2.0, py::arg("k") = 1.0, py::arg("l") = 1.0,
      py::arg("lambda1") = 1.0, py::arg("lambda3") = 2.0);

  py::class_<ExactSolution>(m, "ExactSolution")
      .def_readonly("alpha2", &ExactSolution::alpha2)
      .def_readonly("s1_mod", &ExactSolution::s1_mod)
      .def_readonly("s3_mod", &ExactSolution::s3_mod)
      .def_readonly("a", &ExactSolution::a)
      .def_readonly("notes", &ExactSolution::notes)
      .def_property_readonly("t_max", [](const ExactSolution& s) { return s.window.t_max; })
      .def_property_readonly("interval",
                             [](const ExactSolution& s) {
                               return py::make_tuple(s.interval_begin(), s.interval_end());
                             })
      .def("eval", [](const ExactSolution& s, double t, double x) { return jet_dict(s.eval(t, x)); },
           py::arg("t"), py::arg("x"))
      .def("neumann_residual",
           [](const ExactSolution& s, double t) {
             const NeumannFluxes f = neumann_residual(s, t);
             return py::make_tuple(f.U_left, f.V_left, f.U_right, f.V_right);
           },
           py::arg("t"))
      .def("pde_residual",
           [](const ExactSolution& s, double t, double x) {
             const LinearSystem lin = specialize_linear(s.linear_params());
             const ResidualPair r = original_residual(lin.system, s.eval(t, x));
             return py::make_tuple(r.first, r.second);
           },
           py::arg("t"), py::arg("x"))
      .def("translate", [](const ExactSolution& s, double x0) { return translate(s, x0); },
           py::arg("x0"));

  m.def(
      "build_exact",
      [](const std::string& case_id, double k, double l, double r, double lambda1, double lambda3,
         double alpha1, double beta1, std::optional<double> alpha2, double beta2, double A1,
         double A3, int j1, int j2) {
        ExactParams p;
        p.case_id = parse_solution_case(case_id);
        p.k = k;
        p.l = l;
        p.r = r;
        p.lambda1 = lambda1;
        p.lambda3 = lambda3;
        p.alpha1 = alpha1;
        p.beta1 = beta1;
        p.alpha2 = alpha2;
        p.beta2 = beta2;
        p.A1 = A1;
        p.A3 = A3;
        p.j1 = j1;
        p.j2 = j2;
        return build_exact(p);
      },
      py::arg("case") = "i", py::arg("k") = 1.0, py::arg("l") = 1.0, py::arg("r") = 2.0,
      py::arg("lambda1") = 1.0, py::arg("lambda3") = 2.0, py::arg("alpha1") = -2.0,
      py::arg("beta1") = -1.0, py::arg("alpha2") = std::optional<double>(-2.0),
      py::arg("beta2") = -2.0, py::arg("A1") = 0.95, py::arg("A3") = 0.0, py::arg("j1") = 1,
      py::arg("j2") = 1);

  m.def(
      "admissible_intervals",
      [](const std::string& case_id, double alpha1, double beta1, double alpha2, double beta2,
         int count) {
        const auto list = admissible_intervals(parse_solution_case(case_id),
                                               quartic_spectrum(alpha1, beta1, alpha2, beta2),
                                               alpha1, beta2, count);
        std::vector<double> a;
        for (const auto& iv : list) a.push_back(iv.a);
        return a;
      },
      py::arg("case"), py::arg("alpha1"), py::arg("beta1"), py::arg("alpha2"), py::arg("beta2"),
      py::arg("count"));

  m.def(
      "solve_p_ode",
      [](double lambda, double p0, double dp0, double x_begin, double x_end, double step) {
        const PSolution s = solve_p_ode(lambda, p0, dp0, x_begin, x_end, step);
        std::vector<double> x(s.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = s.node(i);
        return py::make_tuple(x, s.values(), s.slopes());
      },
      py::arg("lambda_"), py::arg("p0"), py::arg("dp0"), py::arg("x_begin"), py::arg("x_end"),
      py::arg("step"));

  m.def(
      "simulate_exact",
      [](const ExactSolution& sol, int N, double T, std::vector<double> samples) {
        const LinearSystem lin = specialize_linear(sol.linear_params());
        const Grid1D grid = grid_for(sol, N);
        const Trajectory traj = simulate(lin.system, sample_exact(sol, grid, 0.0), grid,
                                         std::nullopt, T, std::move(samples));
        py::list out;
        for (const auto& f : traj.samples) {
          const ErrorNorms e = error_norms(traj, grid, sol, f.t);
          py::dict d;
          d["t"] = f.t;
          d["U"] = f.U;
          d["V"] = f.V;
          d["linf_error"] = e.linf;
          out.append(d);
        }
        return py::make_tuple(grid.coordinates(), out);
      },
      py::arg("solution"), py::arg("N") = 200, py::arg("T") = 0.5,
      py::arg("samples") = std::vector<double>{});

  m.def(
      "run_config",
      [](const std::string& text, std::optional<std::uint64_t> seed) {
        RunConfig cfg = parse_config(text, "<string>", false);
        if (seed) cfg.seed = *seed;
        validate_config(cfg);
        const RunOutcome o = run(cfg);
        py::dict files;
        for (const auto& [name, content] : o.files) files[py::str(name)] = content;
        return py::make_tuple(o.exit_code, o.report, files);
      },
      py::arg("text"), py::arg("seed") = std::optional<std::uint64_t>());
}
