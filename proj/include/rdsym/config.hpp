#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdsym/exact_solutions.hpp"
#include "rdsym/families.hpp"
#include "rdsym/functions.hpp"

namespace rdsym {

/// One CLI invocation, read from `key = value` lines.
struct RunConfig {
  std::string command;

  // symmetry families
  int family = 2;
  double k = 1.0;
  double l = 1.0;
  double lambda = 0.0;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> lambda3;
  std::optional<double> lambda4;
  std::optional<double> alpha;
  std::string f = "zero";
  std::string g = "zero";
  // p'' = p^2 + lambda p, integrated on [x_begin, x_end]
  double p0 = 6.0;
  double dp0 = -12.0;
  double x_begin = 1.0;
  double x_end = 2.0;
  double ode_step = 1e-3;

  // linear reduction and exact solutions
  SolutionCase solution_case = SolutionCase::i;
  double alpha1 = -2.0;
  double beta1 = -1.0;
  std::optional<double> alpha2;
  double beta2 = -2.0;
  double r = 2.0;
  double A1 = 0.95;
  double A3 = 0.0;
  int j1 = 1;
  int j2 = 1;

  // grid and time stepping
  std::optional<double> a;
  int N = 200;
  std::optional<double> dt;
  double T = 1.0;
  std::vector<double> samples;
  int levels = 3;

  int count = 3;
  int points = 100;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string out;

  /// Line of every key that was set, for diagnostics.
  std::map<std::string, int> lines;
  std::string source = "<config>";
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands = {
      "verify-symmetry", "reduce", "spectrum", "exact",
      "intervals", "simulate", "residual", "convergence"};
  return commands;
}

/// Parses and validates; every ConfigError names the source and line.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>",
                       bool validate = true);
RunConfig load_config(const std::string& path, bool validate = true);

/// Sets one key (same syntax as a config line); throws ConfigError for unknown keys
/// or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Re-runs the parameter checks of the selected command (used after CLI overrides).
void validate_config(const RunConfig& cfg);

/// "zero", "linear a b", "reciprocal a b" or "sine a b".
UnivariateFunction parse_univariate(const std::string& spec);

/// Family parameters; families 1 and 3 get p from the p-ODE solver.
FamilyParams family_params(const RunConfig& cfg);
ExactParams exact_params(const RunConfig& cfg);

}  // namespace rdsym
