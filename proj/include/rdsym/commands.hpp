#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rdsym/config.hpp"

namespace rdsym {

/// Result of one command: exit status, report text and named CSV artifacts.
struct RunOutcome {
  int exit_code = 0;
  std::string report;
  std::vector<std::pair<std::string, std::string>> files;
};

/// Dispatches cfg.command. Module errors propagate as rdsym::Error.
RunOutcome run(const RunConfig& cfg);

/// Writes report.txt and every CSV into dir (created if missing).
void write_artifacts(const RunOutcome& outcome, const std::string& dir);

/// run() + artifacts + error mapping: returns the exit status and prints the report
/// (unless quiet) and diagnostics.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool quiet = false);

/// %.17g
std::string format_number(double v);

}  // namespace rdsym
