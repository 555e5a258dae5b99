#pragma once

#include <cmath>
#include <random>

#include "rdsym/families.hpp"
#include "rdsym/reduction.hpp"

namespace rdsym::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Magnitude in [lo, hi] with a random sign.
inline double nonzero(std::mt19937_64& rng, double lo, double hi) {
  const double v = uniform(rng, lo, hi);
  return std::bernoulli_distribution(0.5)(rng) ? v : -v;
}

inline UnivariateFunction random_function(std::mt19937_64& rng, bool allow_reciprocal) {
  const int kind = std::uniform_int_distribution<int>(0, allow_reciprocal ? 2 : 1)(rng);
  const double a = uniform(rng, -1.5, 1.5), b = uniform(rng, -1.0, 1.0);
  switch (kind) {
    case 0: return UnivariateFunction::linear(a, b);
    case 1: return UnivariateFunction::sine(a, b);
    default: return UnivariateFunction::reciprocal(a, b);
  }
}

// p'' = p^2 + lambda p on [0, 1] from a bounded start.
inline Profile random_p(std::mt19937_64& rng, double lambda) {
  const double p0 = uniform(rng, 0.5, 1.5), dp0 = uniform(rng, -0.5, 0.5);
  return solve_p_ode(lambda, p0, dp0, 0.0, 1.0, 1e-3).as_profile();
}

inline FamilyParams random_family_params(int id, std::mt19937_64& rng) {
  FamilyParams fp;
  fp.family_id = id;
  fp.k = uniform(rng, 0.2, 2.0);
  fp.l = uniform(rng, 0.2, 2.0);
  fp.f = random_function(rng, id >= 4);
  fp.g = random_function(rng, id >= 4);
  switch (id) {
    case 1:
      fp.l = -0.5;
      fp.lambda = uniform(rng, -1.0, 1.0);
      fp.p = random_p(rng, fp.lambda);
      break;
    case 2:
      fp.lambda1 = uniform(rng, -1.0, 1.0);
      fp.lambda2 = nonzero(rng, 0.3, 1.5);
      break;
    case 3:
      fp.k = fp.l = -0.5;
      fp.lambda = uniform(rng, -1.0, 1.0);
      fp.p = random_p(rng, fp.lambda);
      break;
    case 4:
      fp.lambda1 = uniform(rng, -1.0, 1.0);
      fp.lambda2 = nonzero(rng, 0.3, 1.5);
      fp.lambda3 = uniform(rng, 0.0, 1.0);
      break;
    case 5:
      fp.lambda1 = uniform(rng, 0.0, 1.0);
      fp.lambda2 = nonzero(rng, 0.3, 1.5);
      fp.lambda3 = uniform(rng, 0.0, 1.0);
      fp.lambda4 = nonzero(rng, 0.3, 1.5);
      break;
  }
  return fp;
}

}  // namespace rdsym::testing
