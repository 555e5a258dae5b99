#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rdsym/commands.hpp"
#include "rdsym/config.hpp"
#include "rdsym/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Conditional symmetries, exact solutions and simulation of power-diffusivity "
               "reaction-diffusion systems"};
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool quiet = false;
  std::vector<std::string> settings;
  app.add_option("--config", config_path, "key = value run configuration")->required();
  app.add_option("--out", out_dir, "directory for report.txt and CSV output");
  app.add_option("--seed", seed, "seed for random sampling");
  app.add_option("--tol", tol, "tolerance override");
  app.add_flag("--quiet", quiet, "do not print the report");
  app.add_option("--set", settings, "override a config key (key=value), repeatable");
  CLI11_PARSE(app, argc, argv);

  try {
    rdsym::RunConfig cfg = rdsym::load_config(config_path, false);
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw rdsym::ConfigError("--set expects key=value, got '" + s + "'");
      rdsym::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!out_dir.empty()) cfg.out = out_dir;
    if (seed) cfg.seed = *seed;
    if (tol) cfg.tol = *tol;
    rdsym::validate_config(cfg);
    return rdsym::execute(cfg, std::cout, std::cerr, quiet);
  } catch (const rdsym::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
}
