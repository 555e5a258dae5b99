#include <cmath>
#include <random>

#include "doctest.h"
#include "rdsym/core_model.hpp"
#include "rdsym/error.hpp"
#include "rdsym/exact_solutions.hpp"
#include "rdsym/reduction.hpp"
#include "support.hpp"

using namespace rdsym;
using rdsym::testing::uniform;

namespace {

RDSystemOriginal system_with(double k, double l, BivariateFunction F, BivariateFunction G) {
  RDSystemOriginal s;
  s.k = k;
  s.l = l;
  s.F = std::move(F);
  s.G = std::move(G);
  return s;
}

// Smooth positive test pair with analytic derivatives.
JetPoint smooth_pair(double t, double x) {
  JetPoint p;
  p.t = t;
  p.x = x;
  const double e = std::exp(-0.3 * t);
  p.u = {1.5 + 0.4 * std::sin(x) * e, -0.12 * std::sin(x) * e, 0.4 * std::cos(x) * e,
         -0.4 * std::sin(x) * e};
  p.v = {2.0 + 0.2 * std::cos(2 * x) + 0.1 * t, 0.1, -0.4 * std::sin(2 * x),
         -0.8 * std::cos(2 * x)};
  return p;
}

RDSystemOriginal random_system(std::mt19937_64& rng) {
  const double k = uniform(rng, -0.8, 2.5), l = uniform(rng, -0.8, 2.5);
  const double a = uniform(rng, -1, 1), b = uniform(rng, -1, 1), c = uniform(rng, -1, 1);
  return system_with(
      k, l,
      BivariateFunction([=](double U, double V) { return a * U * U + b * std::sin(V); },
                        [=](double U, double V) {
                          return std::array<double, 2>{2 * a * U, b * std::cos(V)};
                        }),
      BivariateFunction([=](double U, double V) { return c * U * V; },
                        [=](double U, double V) { return std::array<double, 2>{c * V, c * U}; }));
}

}  // namespace

TEST_CASE("substitution exponents") {
  const auto F = BivariateFunction();
  auto tr = transform_to_uv(system_with(1, 1, F, F));
  CHECK(tr.m == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(tr.n == doctest::Approx(-0.5).epsilon(1e-15));
  tr = transform_to_uv(system_with(0, 0, F, F));
  CHECK(tr.m == 0.0);
  CHECK(tr.n == 0.0);
}

TEST_CASE("reaction term is composed with the inverse powers") {
  const auto F = BivariateFunction([](double U, double) { return U; },
                                   [](double, double) { return std::array<double, 2>{1, 0}; });
  const auto tr = transform_to_uv(system_with(1, 1, F, BivariateFunction()));
  CHECK(tr.C1(4.0, 1.0) == doctest::Approx(-4.0).epsilon(1e-15));
  // d/du (-2 sqrt(u)) = -1/sqrt(u)
  CHECK(tr.C1.gradient(4.0, 1.0)[0] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("k = -1 and l = -1 are rejected by name") {
  const auto F = BivariateFunction();
  try {
    transform_to_uv(system_with(-1, 1, F, F));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("k = -1") != std::string::npos);
  }
  try {
    transform_to_uv(system_with(1, -1, F, F));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("l = -1") != std::string::npos);
  }
}

TEST_CASE("original residual examples") {
  SUBCASE("constant steady state") {
    const double U0 = 1.3, V0 = 0.7;
    const auto F = BivariateFunction([=](double U, double V) { return (U - U0) * V; },
                                     [=](double U, double V) {
                                       return std::array<double, 2>{V, U - U0};
                                     });
    const auto G = BivariateFunction([=](double U, double V) { return U * (V - V0); },
                                     [=](double U, double V) {
                                       return std::array<double, 2>{V - V0, U};
                                     });
    JetPoint p;
    p.u.value = U0;
    p.v.value = V0;
    const auto r = original_residual(system_with(1.5, 0.5, F, G), p);
    CHECK(r.first == 0.0);
    CHECK(r.second == 0.0);
  }
  SUBCASE("heat equation on a non-solution") {
    const double x = 0.7;
    JetPoint p;
    p.x = x;
    p.u = {x * x, 0.0, 2 * x, 2.0};
    p.v = {1.0, 0.0, 0.0, 0.0};
    const auto r = original_residual(system_with(0, 0, BivariateFunction(), BivariateFunction()), p);
    CHECK(r.first == doctest::Approx(-2.0).epsilon(1e-15));
  }
  SUBCASE("linear-reduction system at its exact solution") {
    const ExactSolution sol = build_exact(ExactParams{});
    const LinearSystem lin = specialize_linear(sol.linear_params());
    for (double t : {0.0, 0.3, 1.7})
      for (double x : {0.0, 0.9, 2.2, 4.0}) {
        const auto r = original_residual(lin.system, sol.eval(t, x));
        CHECK(std::abs(r.first) < 1e-10);
        CHECK(std::abs(r.second) < 1e-10);
      }
  }
}

TEST_CASE("nonpositive field with fractional power is a domain error with location") {
  JetPoint p;
  p.t = 0.25;
  p.x = 1.5;
  p.u.value = -1.0;
  p.v.value = 1.0;
  try {
    original_residual(system_with(0.5, 1, BivariateFunction(), BivariateFunction()), p);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    REQUIRE(e.t());
    CHECK(*e.t() == 0.25);
    CHECK(*e.x() == 1.5);
  }
}

TEST_CASE("transformed residual examples") {
  RDSystemTransformed heat;
  JetPoint p;
  p.u = {2.0, 0.3, 0.1, 0.3};
  p.v = {1.0, -0.2, 0.0, -0.2};
  const auto r = transformed_residual(heat, p);
  CHECK(r.first == 0.0);
  CHECK(r.second == 0.0);

  // stationary u = phi with phi'' = C1(phi, v) = phi
  RDSystemTransformed sys;
  sys.m = 0.5;
  sys.C1 = BivariateFunction([](double u, double) { return u; },
                             [](double, double) { return std::array<double, 2>{1, 0}; });
  p.u = {std::cosh(0.4), 0.0, std::sinh(0.4), std::cosh(0.4)};
  CHECK(std::abs(transformed_residual(sys, p).first) < 1e-15);
}

TEST_CASE("residuals of the two forms differ by -1/(k+1)") {
  std::mt19937_64 rng(11);
  for (int draw = 0; draw < 50; ++draw) {
    const RDSystemOriginal sys = random_system(rng);
    const RDSystemTransformed tr = transform_to_uv(sys);
    const JetPoint UV = smooth_pair(uniform(rng, 0, 2), uniform(rng, -3, 3));
    const JetPoint uv = map_jet_to_uv(UV, sys.k, sys.l);
    const auto r = original_residual(sys, UV);
    const auto R = transformed_residual(tr, uv);
    const double scale = 1.0 + std::abs(r.first) + std::abs(r.second);
    CHECK(std::abs(r.first + R.first / (sys.k + 1)) < 1e-12 * scale);
    CHECK(std::abs(r.second + R.second / (sys.l + 1)) < 1e-12 * scale);
  }
}

TEST_CASE("round trip of the substitution is the identity") {
  std::mt19937_64 rng(7);
  for (int draw = 0; draw < 100; ++draw) {
    const RDSystemOriginal sys = random_system(rng);
    const RDSystemOriginal back = transform_to_UV(transform_to_uv(sys));
    CHECK(back.k == doctest::Approx(sys.k).epsilon(1e-14));
    CHECK(back.l == doctest::Approx(sys.l).epsilon(1e-14));
    const double U = uniform(rng, 0.3, 3), V = uniform(rng, 0.3, 3);
    CHECK(back.F(U, V) == doctest::Approx(sys.F(U, V)).epsilon(1e-12));
    CHECK(back.G(U, V) == doctest::Approx(sys.G(U, V)).epsilon(1e-12));
    const auto g0 = sys.F.gradient(U, V), g1 = back.F.gradient(U, V);
    CHECK(g1[0] == doctest::Approx(g0[0]).epsilon(1e-11));
    CHECK(g1[1] == doctest::Approx(g0[1]).epsilon(1e-11));
  }
}

TEST_CASE("residual equivalence: both forms vanish together") {
  // A pair solving U_t = (U U_x)_x + F with F manufactured from it.
  const double k = 1.0;
  auto manufactured = [&](const JetPoint& p) {
    return p.u.t - k * std::pow(p.u.value, k - 1) * p.u.x * p.u.x - std::pow(p.u.value, k) * p.u.xx;
  };
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const JetPoint UV = smooth_pair(uniform(rng, 0, 1), uniform(rng, -2, 2));
    const double Fv = manufactured(UV);
    const RDSystemOriginal sys = system_with(
        k, 0.0,
        BivariateFunction([=](double, double) { return Fv; },
                          [](double, double) { return std::array<double, 2>{0, 0}; }),
        BivariateFunction([&](double, double) { return UV.v.t - UV.v.xx; },
                          [](double, double) { return std::array<double, 2>{0, 0}; }));
    const auto r = original_residual(sys, UV);
    const auto R = transformed_residual(transform_to_uv(sys), map_jet_to_uv(UV, k, 0.0));
    CHECK(r.max_abs() < 1e-10);
    CHECK(R.max_abs() < 1e-10);
  }
  const JetPoint UV = smooth_pair(0.5, 0.5);
  const RDSystemOriginal off = system_with(k, 0.0, BivariateFunction(), BivariateFunction());
  CHECK(original_residual(off, UV).max_abs() > 1e-3);
  CHECK(transformed_residual(transform_to_uv(off), map_jet_to_uv(UV, k, 0.0)).max_abs() > 1e-3);
}
