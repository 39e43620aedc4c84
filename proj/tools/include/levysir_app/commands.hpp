#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "levysir/config.hpp"
#include "levysir/montecarlo.hpp"
#include "levysir/sde.hpp"

namespace levysir::app {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kRuntimeError = 2,
  kIoError = 3,
};

struct CommandOptions {
  /// Output directory for CSV files. analyze only writes a CSV when set.
  std::optional<std::filesystem::path> out_dir;
  bool quiet = false;
  unsigned threads = 0;
};

/// Multi-line human-readable analysis of a scenario.
std::string analysis_report(const ScenarioConfig& config);

void cmd_analyze(const ScenarioConfig& config, const CommandOptions& options, std::ostream& log);
Trajectory cmd_simulate(const ScenarioConfig& config, const CommandOptions& options,
                        std::ostream& log);
EnsembleStats cmd_ensemble(const ScenarioConfig& config, const CommandOptions& options,
                           std::ostream& log);
SweepTable cmd_sweep(const ScenarioConfig& config, const CommandOptions& options,
                     std::ostream& log);

enum class Figure { fig1a, fig1b, fig1c, fig1d, fig2, fig3 };

const char* to_string(Figure f);
/// Throws ValidationError for an unknown name.
Figure parse_figure(std::string_view name);

/// Built-in scenario for a figure. For fig2/fig3 the jump measure is a single
/// atom of rate kCalibrationRate whose amplitude makes the measure's jump
/// correction equal to -phi_override.
ScenarioConfig preset(Figure figure);

inline constexpr double kCalibrationRate = 1.0;

/// Runs the preset and writes <out>/<figure>/ with the data files and a
/// manifest.json of every chosen setting.
void cmd_reproduce(Figure figure, std::optional<std::size_t> paths,
                   std::optional<std::uint64_t> seed, const CommandOptions& options,
                   std::ostream& log);

/// Entry point shared by the executable and the tests. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levysir::app
