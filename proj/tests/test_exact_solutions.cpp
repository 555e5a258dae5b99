#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rdsym/error.hpp"
#include "rdsym/exact_solutions.hpp"
#include "rdsym/reduction.hpp"
#include "support.hpp"

using namespace rdsym;
using rdsym::testing::uniform;

namespace {

ExactParams fig2_params() {
  ExactParams p;
  p.r = -2.0;
  p.A1 = 0.1;
  return p;
}

ExactParams case_ii_params() {
  ExactParams p;
  p.case_id = SolutionCase::ii;
  p.A1 = 0.0;
  p.A3 = 0.3;
  return p;
}

ExactParams case_iii_params() {
  ExactParams p;
  p.case_id = SolutionCase::iii;
  p.alpha2.reset();
  p.j1 = 1;
  p.j2 = 2;
  p.A1 = 0.2;
  p.A3 = 0.1;
  return p;
}

double max_pde_residual(const ExactSolution& sol, int points, std::uint64_t seed, double t_hi) {
  const LinearSystem lin = specialize_linear(sol.linear_params());
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = uniform(rng, 0.0, t_hi);
    const double x = uniform(rng, sol.interval_begin(), sol.interval_end());
    worst = std::max(worst, original_residual(lin.system, sol.eval(t, x)).max_abs());
  }
  return worst;
}

}  // namespace

TEST_CASE("reference solution values") {
  const ExactSolution sol = build_exact(ExactParams{});
  const JetPoint p = sol.eval(0.0, 0.0);
  // sqrt(1.95), sqrt(2 - 0.95 sqrt 2)
  CHECK(std::abs(p.u.value - 1.396424004376894117) < 1e-14);
  CHECK(std::abs(p.v.value - 0.810245096094730935) < 1e-14);
  CHECK(std::abs(sol.a - std::numbers::pi / 0.765366864730179543) < 1e-12);
  CHECK(std::isinf(sol.window.t_max));
}

TEST_CASE("zero amplitude gives the steady state") {
  ExactParams params;
  params.A1 = 0.0;
  const ExactSolution sol = build_exact(params);
  const auto [U, V] = steady_state(1.0, 2.0, 1.0, 1.0);
  CHECK(U == doctest::Approx(1.0));
  CHECK(V == doctest::Approx(std::sqrt(2.0)));
  for (double t : {0.0, 1.0})
    for (double x : {0.0, 1.3}) {
      const JetPoint p = sol.eval(t, x);
      CHECK(p.u.value == doctest::Approx(U).epsilon(1e-15));
      CHECK(p.v.value == doctest::Approx(V).epsilon(1e-15));
    }
}

TEST_CASE("steady state examples") {
  CHECK(steady_state(1, 1, 0.3, 2.7).first == 1.0);
  CHECK(steady_state(1, 1, 0.3, 2.7).second == 1.0);
  CHECK(steady_state(8, 1, 2, 1).first == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(steady_state(-8, 1, -0.5, 1).first == doctest::Approx(64.0));
  CHECK_THROWS_AS(steady_state(-1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(steady_state(0, 1, 1, 1), DomainError);
}

TEST_CASE("growth case validity window") {
  const ExactSolution sol = build_exact(fig2_params());
  CHECK(std::abs(sol.window.t_max_U - 1.151292546497023) < 1e-12);
  CHECK(std::abs(sol.window.t_max - std::log(10.0) / 2.0) < 1e-12);
  // V: psi amplitude 0.1 sqrt 2, lambda3 = 2 -> later
  CHECK(sol.window.t_max_V > sol.window.t_max_U);
  CHECK(sol.window.x_min_U == doctest::Approx(sol.a));

  // bisection on the base minimum lambda1 - A1 e^{2t}
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (1.0 + sol.profiles.phi(sol.window.x_min_U) * std::exp(2.0 * mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - sol.window.t_max) < 1e-8);

  try {
    sol.eval(1.2, 0.5);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    REQUIRE(e.t());
    CHECK(*e.t() == doctest::Approx(sol.window.t_max));
    CHECK(*e.x() == doctest::Approx(sol.a));
  }
}

TEST_CASE("nonpositive base at t = 0 is rejected with its location") {
  ExactParams p;
  p.A1 = 1.5;
  try {
    build_exact(p);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    REQUIRE(e.t());
    CHECK(*e.t() == 0.0);
  }
}

TEST_CASE("admissible intervals") {
  const SpectralData s = quartic_spectrum(-2, -1, -2, -2);
  const auto i = admissible_intervals(SolutionCase::i, s, -2, -2, 3);
  REQUIRE(i.size() == 3);
  CHECK(std::abs(i[0].a - 4.104688611908124) < 1e-12);
  CHECK(std::abs(i[1].a - 8.209377223816247) < 1e-12);
  CHECK(std::abs(i[2].a - 12.314065835724371) < 1e-12);
  const auto ii = admissible_intervals(SolutionCase::ii, s, -2, -2, 3);
  CHECK(std::abs(ii[0].a - 1.700217692370738) < 1e-12);
  CHECK(std::abs(ii[2].a - 5.100653077112215) < 1e-12);
  const auto iii = admissible_intervals(SolutionCase::iii, s, -2, -2, 4);
  CHECK(std::abs(iii[0].a - 2.221441469079183) < 1e-12);
  CHECK(iii[1].j1 == 1);
  CHECK(iii[1].j2 == 2);
  CHECK(iii[2].j1 == 2);
  CHECK(iii[2].j2 == 1);
  CHECK(iii[3].j1 == 2);
  CHECK(iii[3].j2 == 2);
  for (std::size_t k = 1; k < iii.size(); ++k) CHECK(iii[k].a >= iii[k - 1].a);
  CHECK_THROWS_AS(admissible_intervals(SolutionCase::iii, s, 1, -0.5, 3), ConfigError);
  CHECK_THROWS_AS(admissible_intervals(SolutionCase::i, quartic_spectrum(1, -1, -2, -2), 1, -2, 3),
                  ConfigError);
}

TEST_CASE("mode constraint") {
  CHECK(alpha2_constraint(-3, -3, 2, 4, 4) == 0.0);
  CHECK(alpha2_constraint(-2, -2, -1, 1, 2) == doctest::Approx(-1.44).epsilon(1e-15));
  CHECK_THROWS_AS(alpha2_constraint(-2, -2, 0, 1, 2), ConfigError);

  // the constraint places the spectrum on the two commensurate modes
  const SpectralData s = quartic_spectrum(-2, -1, -1.44, -2);
  const double lo = std::min(s.s1_mod, s.s3_mod), hi = std::max(s.s1_mod, s.s3_mod);
  CHECK(std::abs(hi - 1.788854381999832) < 1e-12);
  CHECK(std::abs(lo - 0.894427190999916) < 1e-12);
  const ExactSolution sol = build_exact(case_iii_params());
  CHECK(std::abs(sol.s1_mod - 4 / std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(sol.s3_mod - 2 / std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(sol.alpha2 + 1.44) < 1e-15);
  CHECK(std::abs(sol.a - std::numbers::pi * std::sqrt(5.0) / 2.0) < 1e-12);
}

TEST_CASE("case iii rejects an inconsistent alpha2 and flags coincident modes") {
  ExactParams p = case_iii_params();
  p.alpha2 = -2.0;
  CHECK_THROWS_AS(build_exact(p), ConfigError);
  p.alpha2 = -1.44;
  CHECK_NOTHROW(build_exact(p));
  p = case_iii_params();
  p.j2 = 1;
  const ExactSolution sol = build_exact(p);
  CHECK(sol.alpha2 == 0.0);
  CHECK(sol.notes.size() == 2);
}

TEST_CASE("all three cases solve the system") {
  CHECK(max_pde_residual(build_exact(ExactParams{}), 200, 1, 3.0) < 1e-9);
  CHECK(max_pde_residual(build_exact(case_ii_params()), 200, 2, 3.0) < 1e-9);
  CHECK(max_pde_residual(build_exact(case_iii_params()), 200, 3, 3.0) < 1e-9);
  const ExactSolution growth = build_exact(fig2_params());
  CHECK(max_pde_residual(growth, 200, 4, 0.95 * growth.window.t_max) < 1e-9);
}

TEST_CASE("zero flux at the ends of admissible intervals") {
  const SpectralData s = quartic_spectrum(-2, -1, -2, -2);
  for (SolutionCase c : {SolutionCase::i, SolutionCase::ii}) {
    for (const auto& iv : admissible_intervals(c, s, -2, -2, 3)) {
      ExactParams p = c == SolutionCase::i ? ExactParams{} : case_ii_params();
      p.j1 = iv.j1;
      const ExactSolution sol = build_exact(p);
      CHECK(sol.a == doctest::Approx(iv.a).epsilon(1e-14));
      CHECK(neumann_residual(sol, 0.7).max_abs() < 1e-12);
    }
  }
  for (const auto& iv : admissible_intervals(SolutionCase::iii, s, -2, -2, 3)) {
    ExactParams p = case_iii_params();
    p.j1 = iv.j1;
    p.j2 = iv.j2;
    const ExactSolution sol = build_exact(p);
    CHECK(neumann_residual(sol, 0.7).max_abs() < 1e-12);
  }
}

TEST_CASE("flux does not vanish off the admissible set") {
  ExactSolution sol = build_exact(ExactParams{});
  sol.a *= 1.1;
  CHECK(neumann_residual(sol, 0.0).max_abs() > 1e-3);

  // a sine component leaves flux at x = 0
  ExactSolution contaminated = build_exact(ExactParams{});
  const double w = contaminated.s1_mod, A2 = 0.05;
  const ReducedSolution red =
      general_solution(quartic_spectrum(-2, -1, -2, -2), -2, -1, {0.95, A2, 0.0, 0.0});
  contaminated.profiles = red;
  const NeumannFluxes f = neumann_residual(contaminated, 0.0);
  // U = sqrt(phi + 1): U_x = phi_x / (2 U) with phi_x(0) = A2 w
  CHECK(f.U_left == doctest::Approx(A2 * w / (2 * std::sqrt(1.95))).epsilon(1e-12));
}

TEST_CASE("spatial period") {
  const ExactSolution sol = build_exact(ExactParams{});
  const double period = 2 * std::numbers::pi / sol.s1_mod;
  for (double x : {0.1, 1.7, 3.3}) {
    CHECK(std::abs(sol.eval(0.4, x).u.value - sol.eval(0.4, x + period).u.value) < 1e-12);
    CHECK(std::abs(sol.eval(0.4, x).v.value - sol.eval(0.4, x + period).v.value) < 1e-12);
  }
}

TEST_CASE("decay towards the steady state") {
  const ExactSolution sol = build_exact(ExactParams{});
  double prev = 1e9;
  for (double t = 0.0; t <= 5.0; t += 0.5) {
    double sup = 0.0;
    for (int i = 0; i <= 100; ++i) sup = std::max(sup, std::abs(sol.eval(t, sol.a * i / 100).u.value - 1.0));
    CHECK(sup <= prev);
    // the trough side dominates: 1 - sqrt(1 - A e^{-rt}) >= sqrt(1 + A e^{-rt}) - 1
    const double decay = 0.95 * std::exp(-2 * t);
    CHECK(sup <= 1.0 - std::sqrt(1.0 - decay) + 1e-15);
    CHECK(sup >= std::sqrt(1.0 + decay) - 1.0);
    prev = sup;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("translation") {
  const ExactSolution sol = build_exact(ExactParams{});
  const ExactSolution same = translate(sol, 0.0);
  CHECK(same.eval(0.3, 1.1).u.value == sol.eval(0.3, 1.1).u.value);

  const ExactSolution left = translate(sol, sol.a);
  CHECK(left.interval_begin() == doctest::Approx(-sol.a));
  CHECK(left.interval_end() == doctest::Approx(0.0));
  CHECK(neumann_residual(left, 0.2).max_abs() < 1e-12);
  CHECK(left.eval(0.2, -sol.a + 0.7).u.value == doctest::Approx(sol.eval(0.2, 0.7).u.value));
  CHECK(max_pde_residual(left, 100, 9, 2.0) < 1e-9);
}

TEST_CASE("case parsing") {
  CHECK(parse_solution_case("iii") == SolutionCase::iii);
  CHECK(parse_solution_case("2") == SolutionCase::ii);
  CHECK(to_string(SolutionCase::i) == "i");
  CHECK_THROWS_AS(parse_solution_case("iv"), ConfigError);
}
