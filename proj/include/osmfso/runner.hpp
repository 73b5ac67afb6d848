#pragma once

// Subcommand execution behind the command-line tool.

#include <iosfwd>
#include <string>

#include "osmfso/montecarlo.hpp"
#include "osmfso/scenario.hpp"

namespace osmfso {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

struct RunOptions {
  std::string subcommand;  ///< abep, mgf, pdf, simulate, coded, compare, figures
  std::string scenario_path;
  Overrides overrides;
  bool json_meta = false;
  Execution execution = Execution::parallel;
};

/// %.12g, the number format of every CSV cell.
std::string format_number(double value);

/// Writes the CSV of one subcommand for a resolved scenario.
void write_csv(const std::string& subcommand, const Scenario& scenario, Execution execution, std::ostream& out);

/// JSON provenance record: resolved scenario, tool version and seed.
std::string metadata_json(const std::string& subcommand, const Scenario& scenario);

/// Runs a subcommand. CSV goes to the scenario output path (or `out` when it is
/// empty); diagnostics go to `err`. Returns an ExitCode.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace osmfso
