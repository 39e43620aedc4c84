#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "levysir/analysis.hpp"
#include "levysir/csv.hpp"
#include "levysir/errors.hpp"
#include "levysir_app/commands.hpp"

namespace levysir::app {

namespace {

constexpr EpidemicParams kBaseParams{0.0073, 0.003, 0.001, 0.01, 0.02};

// Population starts at theta/eta = 7.3 with one unit infected.
constexpr SirState kInitial{6.0, 1.0, 0.3};

// jump correction giving psi = 0.9994 at xi = 0.003 and psi = 1.1042 at
// xi = 0.0033, i.e. (psi0 - psi) * (eta + gamma).
constexpr double kExtinctionPhi = 9.126e-4;
constexpr double kPersistencePhi = 9.0e-4;

ScenarioConfig sweep_preset(SweepParameter parameter, std::vector<double> grid) {
  ScenarioConfig cfg;
  cfg.scenario.params = kBaseParams;
  cfg.scenario.initial = kInitial;
  cfg.scenario.measure = JumpMeasure::single(0.001, kCalibrationRate);
  // Near-threshold points decay at ~1e-3 per unit time; the horizon lets
  // I fall from 1 to below the extinction floor for every psi < 1 point.
  cfg.scenario.integrator = {0.5, 15000.0, 100, Scheme::jump_euler};
  cfg.n_paths = 200;
  cfg.master_seed = 2021;
  cfg.sweep = SweepSpec{parameter, std::move(grid)};
  return cfg;
}

ScenarioConfig calibrated_preset(double xi, double phi_override, double t_end) {
  ScenarioConfig cfg;
  cfg.scenario.params = kBaseParams;
  cfg.scenario.params.xi = xi;
  cfg.scenario.initial = kInitial;
  const double amplitude =
      calibrate_amplitude(cfg.scenario.params, kCalibrationRate, -phi_override);
  cfg.scenario.measure = JumpMeasure::single(amplitude, kCalibrationRate);
  cfg.scenario.integrator = {0.1, t_end, 10, Scheme::jump_euler};
  cfg.scenario.phi_override = phi_override;
  cfg.n_paths = 1000;
  cfg.master_seed = 2021;
  return cfg;
}

nlohmann::json manifest(Figure figure, const ScenarioConfig& cfg) {
  const auto& sc = cfg.scenario;
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : sc.measure.atoms()) {
    atoms.push_back({{"amplitude", a.amplitude}, {"rate", a.rate}});
  }
  nlohmann::json j = {
      {"figure", to_string(figure)},
      {"params",
       {{"theta", sc.params.theta},
        {"xi", sc.params.xi},
        {"eta", sc.params.eta},
        {"rho", sc.params.rho},
        {"gamma", sc.params.gamma}}},
      {"chosen_defaults",
       {{"initial", {{"S", sc.initial.s}, {"I", sc.initial.i}, {"R", sc.initial.r}}},
        {"jump_atoms", atoms},
        {"dt", sc.integrator.dt},
        {"t_end", sc.integrator.t_end},
        {"record_every", sc.integrator.record_every},
        {"scheme", to_string(sc.integrator.scheme)},
        {"n_paths", cfg.n_paths},
        {"master_seed", cfg.master_seed},
        {"extinction_floor", kExtinctionFloor},
        {"seed_derivation", "path k uses mt19937_64 seeded from splitmix64(seed, k)"}}},
      {"config", serialize_config(cfg)},
  };
  const StochasticThresholds th = sc.thresholds();
  j["analysis"] = {{"psi0", psi0(sc.params)},
                   {"phi_from_measure", th.phi_from_measure},
                   {"growth_exponent", growth_exponent(sc.params, sc.measure)},
                   {"psi", th.psi}};
  if (sc.phi_override) {
    j["chosen_defaults"]["phi_override"] = *sc.phi_override;
    j["chosen_defaults"]["jump_calibration"] =
        "single atom of rate " + format_number(kCalibrationRate) +
        " whose amplitude makes phi_from_measure = -phi_override, so the "
        "simulated growth exponent (eta+gamma)(psi0-1)+phi equals (eta+gamma)(psi-1)";
  }
  if (cfg.sweep) {
    j["sweep"] = {{"parameter", to_string(cfg.sweep->parameter)}, {"grid", cfg.sweep->grid}};
  }
  return j;
}

}  // namespace

const char* to_string(Figure f) {
  switch (f) {
    case Figure::fig1a:
      return "fig1a";
    case Figure::fig1b:
      return "fig1b";
    case Figure::fig1c:
      return "fig1c";
    case Figure::fig1d:
      return "fig1d";
    case Figure::fig2:
      return "fig2";
    case Figure::fig3:
      return "fig3";
  }
  return "unknown";
}

Figure parse_figure(std::string_view name) {
  for (auto f : {Figure::fig1a, Figure::fig1b, Figure::fig1c, Figure::fig1d, Figure::fig2,
                 Figure::fig3}) {
    if (name == to_string(f)) return f;
  }
  throw ValidationError("unknown figure '" + std::string(name) +
                        "' (expected fig1a, fig1b, fig1c, fig1d, fig2 or fig3)");
}

ScenarioConfig preset(Figure figure) {
  switch (figure) {
    case Figure::fig1a:
      return sweep_preset(SweepParameter::epsilon,
                          {0.001, 0.002, 0.004, 0.006, 0.008, 0.01, 0.012, 0.016, 0.02});
    case Figure::fig1b:
      return sweep_preset(SweepParameter::theta,
                          {0.0006, 0.0012, 0.0018, 0.0024, 0.003, 0.0036, 0.0042, 0.0048,
                           0.0054, 0.006, 0.0066, 0.0072});
    case Figure::fig1c:
      return sweep_preset(SweepParameter::xi,
                          {0.0003, 0.0006, 0.0009, 0.0012, 0.0015, 0.0018, 0.0021, 0.0024,
                           0.0027, 0.003, 0.0033});
    case Figure::fig1d:
      return sweep_preset(SweepParameter::psi0_proxy,
                          {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.1, 1.2});
    case Figure::fig2: {
      ScenarioConfig cfg = calibrated_preset(0.003, kExtinctionPhi, 600.0);
      cfg.reference.psi0 = 1.0429;
      cfg.reference.psi = 0.9994;
      return cfg;
    }
    case Figure::fig3: {
      ScenarioConfig cfg = calibrated_preset(0.0033, kPersistencePhi, 2000.0);
      cfg.reference.psi = 1.1042;
      cfg.reference.s_star = 7.2977;
      cfg.reference.i_star = 0.0022;
      cfg.reference.r_star = 0.0015;
      return cfg;
    }
  }
  throw ValidationError("unknown figure");
}

void cmd_reproduce(Figure figure, std::optional<std::size_t> paths,
                   std::optional<std::uint64_t> seed, const CommandOptions& options,
                   std::ostream& log) {
  ScenarioConfig cfg = preset(figure);
  if (paths) cfg.n_paths = *paths;
  if (seed) cfg.master_seed = *seed;
  cfg.validate();

  CommandOptions sub = options;
  sub.out_dir = options.out_dir.value_or(".") / to_string(figure);

  nlohmann::json j = manifest(figure, cfg);
  j["outputs"] = nlohmann::json::array();
  if (cfg.sweep) {
    const SweepTable table = cmd_sweep(cfg, sub, log);
    j["outputs"].push_back("sweep.csv");
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& r : table.rows) outcomes.push_back(to_string(r.outcome));
    j["outcomes"] = outcomes;
  } else {
    const std::string report = analysis_report(cfg);
    csv::write_file(*sub.out_dir / "analysis.txt", [&](std::ostream& out) { out << report; });
    j["outputs"].push_back("analysis.txt");
    if (!options.quiet) log << report;

    const EnsembleStats stats = cmd_ensemble(cfg, sub, log);
    j["outputs"].push_back("ensemble.csv");
    j["outcome"] = to_string(classify(stats, cfg.scenario.thresholds()));
    j["terminal_extinct_fraction"] = stats.terminal_extinct_fraction();
    j["median_lyapunov_estimate"] = quantile(stats.lyapunov_estimates, 0.5);
    double mean_avg_i = 0.0;
    for (double v : stats.time_average_i) mean_avg_i += v;
    j["mean_time_average_I"] = mean_avg_i / static_cast<double>(stats.n_paths);

    // One sample path for plotting next to the ensemble bands.
    cmd_simulate(cfg, sub, log);
    j["outputs"].push_back("trajectory.csv");
  }
  const auto path = *sub.out_dir / "manifest.json";
  csv::write_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  if (!options.quiet) log << "wrote " << path.string() << '\n';
}

}  // namespace levysir::app
