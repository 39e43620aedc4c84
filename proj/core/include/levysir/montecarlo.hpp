#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "levysir/analysis.hpp"
#include "levysir/model.hpp"
#include "levysir/sde.hpp"

namespace levysir {

/// Everything needed to simulate one experiment.
struct Scenario {
  EpidemicParams params;
  SirState initial;
  JumpMeasure measure;
  IntegratorConfig integrator;
  /// Replaces the measure-derived jump correction in threshold calculations.
  /// Never affects the simulated dynamics.
  std::optional<double> phi_override;

  StochasticThresholds thresholds() const {
    return levysir::thresholds(params, measure, phi_override);
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// I below this value counts as extinct.
inline constexpr double kExtinctionFloor = 1e-6;

struct CompartmentStats {
  std::vector<double> mean;
  std::vector<double> variance;  ///< sample variance, 0 for one path
  std::vector<double> q05;
  std::vector<double> q50;
  std::vector<double> q95;
};

struct EnsembleStats {
  std::vector<double> times;
  CompartmentStats s;
  CompartmentStats i;
  CompartmentStats r;
  /// Share of paths with I < kExtinctionFloor at each recorded time.
  std::vector<double> extinct_fraction;
  std::size_t n_paths = 0;

  /// Per path, in path-index order.
  std::vector<double> lyapunov_estimates;
  std::vector<double> time_average_i;
  std::vector<double> terminal_i;

  std::uint64_t total_jumps = 0;
  std::uint64_t total_clamps = 0;

  double terminal_extinct_fraction() const {
    return extinct_fraction.empty() ? 0.0 : extinct_fraction.back();
  }
};

struct EnsembleOptions {
  /// Worker threads; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Runs n_paths trajectories, path k using RandomStream(master_seed, k), and
/// aggregates them in path-index order. The result does not depend on the
/// number of threads.
EnsembleStats run_ensemble(const Scenario& scenario, std::size_t n_paths,
                           std::uint64_t master_seed, EnsembleOptions options = {});

enum class Component { s, i, r };

/// (1/t_end) * integral of the component, trapezoidal rule on the recorded
/// grid. A single-point trajectory returns that point's value.
double time_average(const Trajectory& trajectory, Component component);

/// (ln max(I(t_end), floor) - ln I(0)) / t_end. Throws ValidationError when
/// I(0) <= 0 or the trajectory is empty.
double lyapunov_estimate(const Trajectory& trajectory, double floor = kExtinctionFloor);

/// Linear-interpolation sample quantile (R type 7) of unsorted data.
double quantile(std::vector<double> values, double q);

enum class Outcome { extinct, persistent, indeterminate };

const char* to_string(Outcome o);

/// extinct: terminal extinct fraction >= 0.9 and median Lyapunov estimate < 0.
/// persistent: terminal extinct fraction <= 0.1 and, when persistence limits
/// exist, median time-average of I above half of I*.
/// Anything else is indeterminate.
Outcome classify(const EnsembleStats& stats, const StochasticThresholds& thresholds);

enum class SweepParameter { epsilon, theta, xi, psi0_proxy };

const char* to_string(SweepParameter p);

struct SweepRow {
  double value = 0.0;
  double psi0 = 0.0;
  double psi = 0.0;
  double extinct_fraction = 0.0;
  double mean_terminal_i = 0.0;
  Outcome outcome = Outcome::indeterminate;
};

struct SweepTable {
  SweepParameter parameter = SweepParameter::xi;
  std::vector<SweepRow> rows;
};

/// Copy of `base` with one parameter replaced. epsilon sets every atom's
/// amplitude (the measure must be non-empty); psi0_proxy sets xi so that
/// psi0 equals the value.
Scenario apply_sweep_value(const Scenario& base, SweepParameter parameter, double value);

/// One ensemble per grid point, each with the same master seed. The grid must
/// be non-empty and strictly increasing.
SweepTable sweep(const Scenario& base, SweepParameter parameter,
                 std::span<const double> grid, std::size_t n_paths,
                 std::uint64_t master_seed, EnsembleOptions options = {});

}  // namespace levysir
