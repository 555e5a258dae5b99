#include "rdsym/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "rdsym/error.hpp"
#include "rdsym/reduction.hpp"

namespace rdsym {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(const std::string& source, int line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

double to_double(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError("'" + text + "' is not a finite number");
  return v;
}

long long to_integer(const std::string& text) {
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + text + "' is not an integer");
  return v;
}

std::vector<double> to_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  auto real = [](double RunConfig::*field) {
    return Setter([field](RunConfig& c, const std::string& v) { c.*field = to_double(v); });
  };
  auto opt = [](std::optional<double> RunConfig::*field) {
    return Setter([field](RunConfig& c, const std::string& v) { c.*field = to_double(v); });
  };
  auto integer = [](int RunConfig::*field) {
    return Setter([field](RunConfig& c, const std::string& v) {
      c.*field = static_cast<int>(to_integer(v));
    });
  };
  auto text = [](std::string RunConfig::*field) {
    return Setter([field](RunConfig& c, const std::string& v) { c.*field = v; });
  };
  static const std::map<std::string, Setter> table = {
      {"command", text(&RunConfig::command)},
      {"family", integer(&RunConfig::family)},
      {"k", real(&RunConfig::k)},
      {"l", real(&RunConfig::l)},
      {"lambda", real(&RunConfig::lambda)},
      {"lambda1", opt(&RunConfig::lambda1)},
      {"lambda2", opt(&RunConfig::lambda2)},
      {"lambda3", opt(&RunConfig::lambda3)},
      {"lambda4", opt(&RunConfig::lambda4)},
      {"alpha", opt(&RunConfig::alpha)},
      {"f", text(&RunConfig::f)},
      {"g", text(&RunConfig::g)},
      {"p0", real(&RunConfig::p0)},
      {"dp0", real(&RunConfig::dp0)},
      {"x_begin", real(&RunConfig::x_begin)},
      {"x_end", real(&RunConfig::x_end)},
      {"ode_step", real(&RunConfig::ode_step)},
      {"case", [](RunConfig& c, const std::string& v) { c.solution_case = parse_solution_case(v); }},
      {"alpha1", real(&RunConfig::alpha1)},
      {"beta1", real(&RunConfig::beta1)},
      {"alpha2", opt(&RunConfig::alpha2)},
      {"beta2", real(&RunConfig::beta2)},
      {"r", real(&RunConfig::r)},
      {"A1", real(&RunConfig::A1)},
      {"A3", real(&RunConfig::A3)},
      {"j1", integer(&RunConfig::j1)},
      {"j2", integer(&RunConfig::j2)},
      {"a", opt(&RunConfig::a)},
      {"N", integer(&RunConfig::N)},
      {"dt", opt(&RunConfig::dt)},
      {"T", real(&RunConfig::T)},
      {"samples", [](RunConfig& c, const std::string& v) { c.samples = to_list(v); }},
      {"levels", integer(&RunConfig::levels)},
      {"count", integer(&RunConfig::count)},
      {"points", integer(&RunConfig::points)},
      {"seed",
       [](RunConfig& c, const std::string& v) {
         const long long s = to_integer(v);
         if (s < 0) throw ConfigError("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"tol", opt(&RunConfig::tol)},
      {"out", text(&RunConfig::out)},
  };
  return table;
}

bool is_family_command(const std::string& c) { return c == "verify-symmetry" || c == "reduce"; }

bool is_exact_command(const std::string& c) {
  return c == "exact" || c == "simulate" || c == "residual" || c == "convergence";
}

// Line of the first config key named in the tail of `message`, else of `fallback`.
int line_for(const RunConfig& cfg, const std::string& message, const std::string& fallback) {
  const auto colon = message.rfind(": ");
  const std::string tail = colon == std::string::npos ? message : message.substr(colon + 2);
  auto word_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
  int best = -1;
  std::size_t best_pos = std::string::npos;
  for (const auto& [key, line] : cfg.lines) {
    for (std::size_t pos = tail.find(key); pos != std::string::npos; pos = tail.find(key, pos + 1)) {
      const std::size_t end = pos + key.size();
      if ((pos > 0 && word_char(tail[pos - 1])) || (end < tail.size() && word_char(tail[end])))
        continue;
      if (pos < best_pos) {
        best = line;
        best_pos = pos;
      }
      break;
    }
  }
  if (best >= 0) return best;
  const auto it = cfg.lines.find(fallback);
  return it != cfg.lines.end() ? it->second : 0;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
  try {
    it->second(cfg, value);
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

UnivariateFunction parse_univariate(const std::string& spec) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  std::vector<double> args;
  std::string word;
  while (in >> word) args.push_back(to_double(word));
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw ConfigError("function '" + kind + "' takes " + std::to_string(n) + " coefficient(s)");
  };
  if (kind == "zero") {
    need(0);
    return UnivariateFunction::zero();
  }
  if (kind == "linear") {
    need(2);
    return UnivariateFunction::linear(args[0], args[1]);
  }
  if (kind == "reciprocal") {
    need(2);
    return UnivariateFunction::reciprocal(args[0], args[1]);
  }
  if (kind == "sine") {
    need(2);
    return UnivariateFunction::sine(args[0], args[1]);
  }
  throw ConfigError("unknown function '" + spec + "' (zero, linear a b, reciprocal a b, sine a b)");
}

FamilyParams family_params(const RunConfig& cfg) {
  FamilyParams fp;
  fp.family_id = cfg.family;
  fp.k = cfg.k;
  fp.l = cfg.l;
  fp.lambda = cfg.lambda;
  fp.lambda1 = cfg.lambda1.value_or(0.0);
  fp.lambda2 = cfg.lambda2.value_or(1.0);
  fp.lambda3 = cfg.lambda3.value_or(0.0);
  fp.lambda4 = cfg.lambda4.value_or(1.0);
  fp.alpha = cfg.alpha;
  fp.f = parse_univariate(cfg.f);
  fp.g = parse_univariate(cfg.g);
  if (cfg.family == 1 || cfg.family == 3) {
    if (!(cfg.x_end > cfg.x_begin)) throw ConfigError("x_end must exceed x_begin");
    if (!(cfg.ode_step > 0.0)) throw ConfigError("ode_step must be positive");
    fp.p = solve_p_ode(cfg.lambda, cfg.p0, cfg.dp0, cfg.x_begin, cfg.x_end, cfg.ode_step)
               .as_profile();
  }
  return fp;
}

ExactParams exact_params(const RunConfig& cfg) {
  ExactParams p;
  p.case_id = cfg.solution_case;
  p.k = cfg.k;
  p.l = cfg.l;
  p.r = cfg.r;
  p.lambda1 = cfg.lambda1.value_or(1.0);
  p.lambda3 = cfg.lambda3.value_or(2.0);
  p.alpha1 = cfg.alpha1;
  p.beta1 = cfg.beta1;
  p.alpha2 = cfg.alpha2;
  if (!p.alpha2 && cfg.solution_case != SolutionCase::iii) p.alpha2 = -2.0;
  p.beta2 = cfg.beta2;
  p.A1 = cfg.A1;
  p.A3 = cfg.A3;
  p.j1 = cfg.j1;
  p.j2 = cfg.j2;
  return p;
}

void validate_config(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  auto located = [&](const std::string& fallback, const std::function<void()>& check) {
    try {
      check();
    } catch (const ConfigError& e) {
      fail_at(cfg.source, line_for(cfg, e.what(), fallback), e.what());
    }
  };
  if (c.empty()) fail_at(cfg.source, 0, "missing key 'command'");
  if (std::find(known_commands().begin(), known_commands().end(), c) == known_commands().end())
    fail_at(cfg.source, line_for(cfg, "command", "command"), "unknown command '" + c + "'");
  if (cfg.points < 1) fail_at(cfg.source, line_for(cfg, "points", "points"), "points must be positive");
  if (cfg.tol && !(*cfg.tol > 0.0)) fail_at(cfg.source, line_for(cfg, "tol", "tol"), "tol must be positive");

  if (is_family_command(c)) located("family", [&] { validate_family(family_params(cfg)); });
  if (c == "spectrum") {
    located("beta1", [&] {
      if (cfg.beta1 == 0.0) throw ConfigError("beta1 != 0 is required");
    });
  }
  if (c == "intervals") {
    located("count", [&] {
      if (cfg.count < 1) throw ConfigError("count must be positive");
      if (cfg.solution_case == SolutionCase::iii) {
        if (cfg.alpha1 + cfg.beta2 >= 0.0) throw ConfigError("case iii requires alpha1 + beta2 < 0");
      } else if (!quartic_spectrum(cfg.alpha1, cfg.beta1, cfg.alpha2.value_or(-2.0), cfg.beta2)
                      .purely_imaginary) {
        throw ConfigError("the characteristic roots of alpha1, beta1, alpha2, beta2 are not purely imaginary");
      }
    });
  }
  if (is_exact_command(c)) {
    located("case", [&] {
      build_exact(exact_params(cfg));
      if (cfg.N < 8) throw ConfigError("N must be at least 8");
      if (cfg.T < 0.0) throw ConfigError("T must be non-negative");
      if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("dt must be positive");
      if (cfg.levels < 2) throw ConfigError("levels must be at least 2");
      if (cfg.a && !(*cfg.a > 0.0)) throw ConfigError("a must be positive");
    });
  }
}

RunConfig parse_config(const std::string& text, const std::string& source, bool validate) {
  RunConfig cfg;
  cfg.source = source;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail_at(source, line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail_at(source, line, "missing key before '='");
    if (value.empty()) fail_at(source, line, "missing value for '" + key + "'");
    if (cfg.lines.count(key))
      fail_at(source, line,
              "duplicate key '" + key + "' (first set on line " + std::to_string(cfg.lines[key]) + ")");
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      fail_at(source, line, e.what());
    }
    cfg.lines[key] = line;
  }
  if (validate) validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path, validate);
}

}  // namespace rdsym
