#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "rdsym/error.hpp"
#include "rdsym/exact_solutions.hpp"
#include "rdsym/families.hpp"
#include "rdsym/reduction.hpp"
#include "support.hpp"

using namespace rdsym;
using rdsym::testing::random_family_params;
using rdsym::testing::uniform;

namespace {

std::string restriction_message(const FamilyParams& fp) {
  try {
    validate_family(fp);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

Profile affine(double a, double b) {
  return Profile([=](double x) { return Jet1{a + b * x, b, 0.0}; });
}

Profile trial(double c, double amp, double w) {
  return Profile([=](double x) {
    return Jet1{c + amp * std::sin(w * x), amp * w * std::cos(w * x),
                -amp * w * w * std::sin(w * x)};
  });
}

Profile p_exact() {
  return Profile([](double x) { return Jet1{6 / (x * x), -12 / (x * x * x), 36 / (x * x * x * x)}; },
                 1.0, 2.0);
}

}  // namespace

TEST_CASE("every family operator solves its determining equations") {
  std::mt19937_64 rng(101);
  for (int id = 1; id <= 5; ++id) {
    for (int draw = 0; draw < 10; ++draw) {
      const FamilyParams fp = random_family_params(id, rng);
      const Family fam = build_family(fp);
      double worst = 0.0;
      for (int i = 0; i < 100; ++i)
        worst = std::max(worst,
                         determining_residuals(fam.op, fam.transformed, sample_base_point(fp, rng))
                             .max_abs);
      INFO(describe_family(fp));
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("restrictions are named when violated") {
  FamilyParams fp;
  fp.family_id = 2;
  fp.lambda1 = 1.0;
  fp.lambda2 = 0.0;
  CHECK(restriction_message(fp).find("lambda2 != 0") != std::string::npos);

  fp.lambda2 = 1.0;
  fp.alpha = 5.0;
  CHECK(restriction_message(fp).find("alpha") != std::string::npos);
  fp.alpha = 1.0;  // lambda1 (k+1) / (lambda2 (l+1)) = 1
  CHECK(restriction_message(fp).empty());

  fp = FamilyParams{};
  fp.family_id = 1;
  fp.l = 0.5;
  fp.p = p_exact();
  CHECK(restriction_message(fp).find("l = -1/2") != std::string::npos);
  fp.l = -0.5;
  CHECK(restriction_message(fp).empty());
  fp.p = Profile([](double x) { return Jet1{x, 1.0, 0.0}; });
  CHECK(restriction_message(fp).find("p_xx") != std::string::npos);
  fp.p = Profile::constant(0.0);
  CHECK(restriction_message(fp).find("p != 0") != std::string::npos);

  fp = FamilyParams{};
  fp.family_id = 3;
  fp.k = -0.5;
  fp.l = 1.0;
  fp.p = p_exact();
  CHECK(restriction_message(fp).find("k = l = -1/2") != std::string::npos);

  fp = FamilyParams{};
  fp.family_id = 5;
  fp.lambda4 = 0.0;
  CHECK(restriction_message(fp).find("lambda2 lambda4 != 0") != std::string::npos);

  fp = FamilyParams{};
  fp.family_id = 4;
  fp.k = 0.0;
  fp.l = 0.0;
  CHECK(restriction_message(fp).find("k^2 + l^2") != std::string::npos);

  fp = FamilyParams{};
  fp.family_id = 2;
  fp.k = -1.0;
  CHECK(restriction_message(fp).find("(k+1)(l+1)") != std::string::npos);
}

TEST_CASE("ansatz residual equals the multiplier times the reduced residual") {
  std::mt19937_64 rng(202);
  for (int id = 1; id <= 5; ++id) {
    const FamilyParams fp = random_family_params(id, rng);
    const Family fam = build_family(fp);
    AnsatzProfile a{fp, trial(1.5, 0.3, 1.1), trial(1.2, 0.2, 0.7)};
    for (int i = 0; i < 50; ++i) {
      const BasePoint pt = sample_base_point(fp, rng);
      const double t = uniform(rng, 0.0, 0.3);
      const JetPoint UV = ansatz_eval(a, t, pt.x);
      const auto r = original_residual(fam.system, UV);
      const auto rho = reduced_ode_residual(a, pt.x);
      const auto mu = reduction_multipliers(a, t, pt.x);
      const double scale = 1.0 + r.max_abs();
      INFO(describe_family(fp));
      CHECK(std::abs(r.first - mu.first * rho.first) < 1e-9 * scale);
      CHECK(std::abs(r.second - mu.second * rho.second) < 1e-9 * scale);
      CHECK(mu.first != 0.0);
      CHECK(mu.second != 0.0);
      // the ansatz lies on the invariant surface of the operator
      CHECK(invariant_surface_residual(fam, UV).max_abs() < 1e-9 * (1.0 + std::abs(UV.u.t) + std::abs(UV.v.t)));
    }
  }
}

TEST_CASE("reduced solutions give exact solutions of the parent system") {
  std::mt19937_64 rng(303);
  auto check_vanishes = [&](const AnsatzProfile& a, double x_lo, double x_hi) {
    const Family fam = build_family(a.params);
    for (int i = 0; i < 50; ++i) {
      const double x = uniform(rng, x_lo, x_hi), t = uniform(rng, 0.05, 0.5);
      CHECK(reduced_ode_residual(a, x).max_abs() < 1e-12);
      CHECK(original_residual(fam.system, ansatz_eval(a, t, x)).max_abs() < 1e-9);
    }
  };

  SUBCASE("family 1: phi affine, psi = 0, V = (p t)^2") {
    FamilyParams fp;
    fp.family_id = 1;
    fp.k = 0.7;
    fp.l = -0.5;
    fp.p = p_exact();
    check_vanishes({fp, affine(1.0, 0.2), Profile::constant(0.0)}, 1.0, 2.0);
  }
  SUBCASE("family 2: f = g = 0, affine profiles") {
    FamilyParams fp;
    fp.k = 1.0;
    fp.l = 2.0;
    fp.lambda1 = 0.4;
    fp.lambda2 = 0.9;
    check_vanishes({fp, affine(1.0, 0.3), affine(2.0, -0.1)}, -1.0, 1.0);
  }
  SUBCASE("family 3: U = V = (p t)^2") {
    FamilyParams fp;
    fp.family_id = 3;
    fp.k = fp.l = -0.5;
    fp.p = p_exact();
    check_vanishes({fp, Profile::constant(0.0), Profile::constant(0.0)}, 1.0, 2.0);
  }
  SUBCASE("family 4: f = g = 0, psi = log(x + 2)") {
    FamilyParams fp;
    fp.family_id = 4;
    fp.k = 1.0;
    fp.l = 0.5;
    fp.lambda1 = 0.5;
    fp.lambda2 = 0.8;
    fp.lambda3 = 0.3;
    const Profile psi([](double x) {
      const double s = x + 2.0;
      return Jet1{std::log(s), 1.0 / s, -1.0 / (s * s)};
    });
    check_vanishes({fp, affine(1.0, 0.25), psi}, -1.0, 1.0);
  }
  SUBCASE("family 5: the linear reduced system and its trigonometric solution") {
    const LinearSystem lin = specialize_linear(LinearReductionParams{});
    const SpectralData s = quartic_spectrum(-2, -1, -2, -2);
    const ReducedSolution red = general_solution(s, -2, -1, {0.3, 0.0, 0.1, 0.0});
    check_vanishes({lin.family, red.phi.as_profile(), red.psi.as_profile()}, 0.0, 4.0);
  }
}

TEST_CASE("the squared-p reading of the family 1 and 3 ansatz fails") {
  // Same data as the vanishing family-1 case, but with V = (p^2 t)^2.
  FamilyParams fp;
  fp.family_id = 1;
  fp.k = 0.7;
  fp.l = -0.5;
  fp.p = p_exact();
  const Family fam = build_family(fp);
  const AnsatzProfile a{fp, affine(1.0, 0.2), Profile::constant(0.0)};
  double worst = 0.0;
  for (double x : {1.1, 1.4, 1.8})
    for (double t : {0.1, 0.4}) {
      JetPoint UV = ansatz_eval(a, t, x);
      CHECK(original_residual(fam.system, UV).max_abs() < 1e-9);
      const Jet1 p = fp.p(x);
      const FieldJet base{p.value * p.value * t, p.value * p.value, 2 * p.value * p.d1 * t,
                          2 * (p.d1 * p.d1 + p.value * p.d2) * t};
      UV.v = power_of(base, 2.0);
      worst = std::max(worst, original_residual(fam.system, UV).max_abs());
    }
  CHECK(worst > 1e-3);
}

TEST_CASE("ansatz bases must stay positive") {
  FamilyParams fp;
  fp.k = 1.0;
  fp.l = 1.0;
  fp.lambda1 = -2.0;
  const AnsatzProfile a{fp, Profile::constant(0.5), Profile::constant(1.0)};
  try {
    ansatz_eval(a, 1.0, 0.3);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    REQUIRE(e.t());
    CHECK(*e.t() == 1.0);
    CHECK(*e.x() == 0.3);
  }
}

TEST_CASE("family descriptions and coupling exponents") {
  FamilyParams fp;
  fp.family_id = 2;
  fp.k = 1.0;
  fp.l = 3.0;
  fp.lambda1 = 2.0;
  fp.lambda2 = 1.0;
  CHECK(coupling_exponent(fp) == doctest::Approx(1.0));
  CHECK(describe_family(fp).find("family 2") == 0);
  fp.family_id = 5;
  fp.lambda4 = 0.5;
  CHECK(coupling_exponent(fp) == doctest::Approx(1.0 * 2.0 / (0.5 * 4.0)));
}
