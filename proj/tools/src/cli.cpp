#include <iostream>

#include "CLI11.hpp"
#include "levysir/errors.hpp"
#include "levysir_app/commands.hpp"

namespace levysir::app {

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<double> phi_override;
  bool quiet = false;
  std::string figure;
};

ScenarioConfig load_with_overrides(const Flags& f) {
  ScenarioConfig cfg = load_config(f.config_path);
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.paths) cfg.n_paths = *f.paths;
  if (f.phi_override) cfg.scenario.phi_override = *f.phi_override;
  cfg.validate();
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jump-perturbed SIR model: analysis, simulation, ensembles and sweeps"};
  app.require_subcommand(1);
  Flags f;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", f.config_path, "scenario config file");
    if (needs_config) opt->required();
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--seed", f.seed, "master seed (overrides ensemble.seed)");
    cmd->add_option("--paths", f.paths, "number of paths (overrides ensemble.paths)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--phi-override", f.phi_override,
                    "jump correction used for thresholds (overrides analysis.phi_override)");
    cmd->add_flag("--quiet", f.quiet, "suppress the text report");
  };

  auto* analyze = app.add_subcommand("analyze", "equilibria, stability and thresholds");
  auto* simulate = app.add_subcommand("simulate", "one trajectory -> trajectory.csv");
  auto* ensemble = app.add_subcommand("ensemble", "path ensemble -> ensemble.csv");
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep -> sweep.csv");
  auto* reproduce = app.add_subcommand("reproduce", "run a built-in figure preset");
  for (auto* cmd : {analyze, simulate, ensemble, sweep_cmd}) add_common(cmd, true);
  add_common(reproduce, false);
  reproduce->add_option("figure", f.figure, "fig1a|fig1b|fig1c|fig1d|fig2|fig3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  CommandOptions options;
  options.quiet = f.quiet;
  if (!f.out_dir.empty()) options.out_dir = f.out_dir;

  try {
    if (*analyze) {
      cmd_analyze(load_with_overrides(f), options, out);
    } else if (*simulate) {
      cmd_simulate(load_with_overrides(f), options, out);
    } else if (*ensemble) {
      cmd_ensemble(load_with_overrides(f), options, out);
    } else if (*sweep_cmd) {
      cmd_sweep(load_with_overrides(f), options, out);
    } else if (*reproduce) {
      if (!f.config_path.empty()) {
        throw ValidationError("reproduce uses built-in presets and takes no --config");
      }
      if (f.phi_override) {
        throw ValidationError("reproduce presets fix phi; --phi-override is not accepted");
      }
      cmd_reproduce(parse_figure(f.figure), f.paths, f.seed, options, out);
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kSuccess;
}

}  // namespace levysir::app
