#include "levysir_app/commands.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "levysir/analysis.hpp"
#include "levysir/csv.hpp"
#include "levysir/errors.hpp"

namespace levysir::app {

namespace {

std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string complex_str(const std::complex<double>& z) {
  std::ostringstream s;
  s << std::setprecision(6) << z.real();
  if (z.imag() != 0.0) s << (z.imag() > 0 ? "+" : "-") << std::abs(z.imag()) << "i";
  return s.str();
}

// Decimal places written in the shortest form of `reference`, or -1 when the
// number is in exponent notation.
int quoted_decimals(double reference) {
  const std::string s = format_number(reference);
  if (s.find_first_of("eE") != std::string::npos) return -1;
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

// "agrees" when the computed value is within one unit of the last digit the
// reference was quoted with.
std::string compare_line(double computed, double reference) {
  const int d = quoted_decimals(reference);
  const double unit = d < 0 ? 1e-4 * std::abs(reference) : std::pow(10.0, -d);
  const bool agrees = std::abs(computed - reference) <= unit * (1.0 + 1e-9);
  std::ostringstream s;
  s << "(reference " << format_number(reference) << ": "
    << (agrees ? "agrees" : "DIFFERS, formula value kept") << ")";
  return s.str();
}

void row(std::ostream& out, std::string_view label, const std::string& value,
         const std::string& note = {}) {
  out << "  " << std::left << std::setw(34) << label << value;
  if (!note.empty()) out << "  " << note;
  out << '\n';
}

void announce(const CommandOptions& options, std::ostream& log, const std::string& msg) {
  if (!options.quiet) log << msg << '\n';
}

std::filesystem::path out_dir(const CommandOptions& options) {
  return options.out_dir.value_or(std::filesystem::path("."));
}

}  // namespace

std::string analysis_report(const ScenarioConfig& config) {
  const auto& sc = config.scenario;
  const auto& p = sc.params;
  const auto& ref = config.reference;
  const EquilibriumReport eq = equilibria(p);
  const StabilityReport stab = classify_dfe_stability(p);
  const double phi_measure = phi(sc.measure, p);
  const double psi_measure = psi(p, phi_measure);

  std::ostringstream out;
  out << "Deterministic system\n";
  row(out, "theta xi eta rho gamma",
      sci(p.theta) + " " + sci(p.xi) + " " + sci(p.eta) + " " + sci(p.rho) + " " + sci(p.gamma));
  row(out, "disease-free equilibrium",
      "S=" + sci(eq.dfe.s) + " I=" + sci(eq.dfe.i) + " R=" + sci(eq.dfe.r));
  if (eq.endemic) {
    row(out, "endemic equilibrium",
        "S=" + sci(eq.endemic->s) + " I=" + sci(eq.endemic->i) + " R=" + sci(eq.endemic->r));
  } else {
    row(out, "endemic equilibrium", "none (psi0 <= 1)");
  }
  row(out, "psi0", fixed(eq.psi0, 4), ref.psi0 ? compare_line(eq.psi0, *ref.psi0) : "");
  row(out, "DFE eigenvalues",
      complex_str(stab.eigenvalues[0]) + ", " + complex_str(stab.eigenvalues[1]) + ", " +
          complex_str(stab.eigenvalues[2]));
  row(out, "DFE stability", to_string(stab.classification));

  out << "Jump correction\n";
  row(out, "jump atoms", std::to_string(sc.measure.atoms().size()) +
                             " (total rate " + sci(sc.measure.total_rate()) + ")");
  row(out, "phi from measure", sci(phi_measure));
  row(out, "psi from measure", fixed(psi_measure, 4));
  row(out, "growth exponent of ln I at DFE", sci(growth_exponent(p, sc.measure)),
      "(eta+gamma)(psi0-1)+phi, rate seen by the simulator");

  const StochasticThresholds th = sc.thresholds();
  if (th.phi_overridden) {
    row(out, "phi override", sci(th.phi));
    row(out, "psi from override", fixed(th.psi, 4),
        ref.psi ? compare_line(th.psi, *ref.psi) : "");
    if (th.phi > 0.0) {
      out << "  note: phi computed from any jump measure is <= 0, so psi = psi0 - phi/(eta+gamma)\n"
             "        can only be >= psi0. The positive override cannot come from a measure;\n"
             "        it is applied to thresholds only and does not change the dynamics.\n";
    }
  } else if (ref.psi) {
    row(out, "psi reference check", fixed(th.psi, 4), compare_line(th.psi, *ref.psi));
  }

  out << "Thresholds" << (th.phi_overridden ? " (override phi)" : " (measure phi)") << '\n';
  row(out, "psi", fixed(th.psi, 4));
  row(out, "extinction rate bound", sci(th.extinction_rate_bound),
      th.psi < 1.0 ? "(< 0: extinction)" : "(>= 0: no extinction bound)");
  if (th.persistence_limits) {
    const auto& lim = *th.persistence_limits;
    row(out, "S* (limit of <S>)", fixed(lim.s_star, 4),
        ref.s_star ? compare_line(lim.s_star, *ref.s_star) : "");
    row(out, "I* (limit of <I>)", sci(lim.i_star),
        ref.i_star ? compare_line(lim.i_star, *ref.i_star) : "");
    row(out, "R* (limit of <R>)", sci(lim.r_star),
        ref.r_star ? compare_line(lim.r_star, *ref.r_star) : "");
  } else {
    row(out, "persistence limits", "none (psi <= 1)");
  }
  return out.str();
}

void cmd_analyze(const ScenarioConfig& config, const CommandOptions& options, std::ostream& log) {
  config.validate();
  const std::string report = analysis_report(config);
  if (!options.quiet) log << report;
  if (!options.out_dir) return;

  const auto& sc = config.scenario;
  const auto& p = sc.params;
  const EquilibriumReport eq = equilibria(p);
  const StabilityReport stab = classify_dfe_stability(p);
  const StochasticThresholds th = sc.thresholds();
  const auto path = *options.out_dir / "analysis.csv";
  csv::write_file(path, [&](std::ostream& out) {
    const auto kv = [&](std::string_view key, double v) {
      out << key << ',' << format_number(v) << '\n';
    };
    out << "quantity,value\n";
    kv("psi0", eq.psi0);
    kv("dfe_S", eq.dfe.s);
    if (eq.endemic) {
      kv("endemic_S", eq.endemic->s);
      kv("endemic_I", eq.endemic->i);
      kv("endemic_R", eq.endemic->r);
    }
    kv("eigenvalue_1", stab.eigenvalues[0].real());
    kv("eigenvalue_2", stab.eigenvalues[1].real());
    kv("eigenvalue_3", stab.eigenvalues[2].real());
    kv("phi_measure", th.phi_from_measure);
    kv("psi_measure", psi(p, th.phi_from_measure));
    kv("phi", th.phi);
    kv("psi", th.psi);
    kv("extinction_rate_bound", th.extinction_rate_bound);
    if (th.persistence_limits) {
      kv("s_star", th.persistence_limits->s_star);
      kv("i_star", th.persistence_limits->i_star);
      kv("r_star", th.persistence_limits->r_star);
    }
  });
  announce(options, log, "wrote " + path.string());
}

Trajectory cmd_simulate(const ScenarioConfig& config, const CommandOptions& options,
                        std::ostream& log) {
  config.validate();
  const auto& sc = config.scenario;
  if (sc.integrator.scheme == Scheme::jump_euler && sc.measure.empty()) {
    announce(options, log, "warning: jump_euler with an empty jump measure is plain Euler");
  }
  const Trajectory traj =
      simulate(sc.initial, sc.params, sc.measure, sc.integrator, config.master_seed);
  const auto path = out_dir(options) / "trajectory.csv";
  csv::write_file(path, [&](std::ostream& out) { csv::write_trajectory(out, traj); });
  announce(options, log,
           "wrote " + path.string() + " (" + std::to_string(traj.times.size()) + " rows, " +
               std::to_string(traj.jump_count) + " jumps, " +
               std::to_string(traj.clamp_count) + " clamps)");
  return traj;
}

EnsembleStats cmd_ensemble(const ScenarioConfig& config, const CommandOptions& options,
                           std::ostream& log) {
  config.validate();
  const auto& sc = config.scenario;
  if (sc.integrator.scheme == Scheme::jump_euler && sc.measure.empty()) {
    announce(options, log, "warning: jump_euler with an empty jump measure is plain Euler");
  }
  const EnsembleStats stats =
      run_ensemble(sc, config.n_paths, config.master_seed, {options.threads});
  const auto path = out_dir(options) / "ensemble.csv";
  csv::write_file(path, [&](std::ostream& out) { csv::write_ensemble(out, stats); });
  const Outcome outcome = classify(stats, sc.thresholds());
  std::ostringstream msg;
  msg << "wrote " << path.string() << " (" << stats.n_paths << " paths, terminal extinct fraction "
      << stats.terminal_extinct_fraction() << ", median Lyapunov estimate "
      << quantile(stats.lyapunov_estimates, 0.5) << ", outcome " << to_string(outcome) << ")";
  announce(options, log, msg.str());
  return stats;
}

SweepTable cmd_sweep(const ScenarioConfig& config, const CommandOptions& options,
                     std::ostream& log) {
  config.validate();
  if (!config.sweep) {
    throw ValidationError("sweep needs sweep.parameter and sweep.grid in the config");
  }
  const SweepTable table = sweep(config.scenario, config.sweep->parameter, config.sweep->grid,
                                 config.n_paths, config.master_seed, {options.threads});
  const auto path = out_dir(options) / "sweep.csv";
  csv::write_file(path, [&](std::ostream& out) { csv::write_sweep(out, table); });
  announce(options, log,
           "wrote " + path.string() + " (" + std::to_string(table.rows.size()) + " rows)");
  return table;
}

}  // namespace levysir::app
