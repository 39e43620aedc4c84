#include "levysir/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "levysir/errors.hpp"

namespace levysir {

namespace {

double component_of(const SirState& x, Component c) {
  switch (c) {
    case Component::s:
      return x.s;
    case Component::i:
      return x.i;
    case Component::r:
      return x.r;
  }
  return 0.0;
}

// Type 7 quantile of ascending data. Equal neighbours are returned as is so
// infinite samples do not turn into NaN.
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Per-path output kept until aggregation.
struct PathResult {
  Trajectory trajectory;
  double lyapunov = 0.0;
  double average_i = 0.0;
};

PathResult run_path(const Scenario& sc, std::uint64_t seed, std::size_t index) {
  RandomStream rng(seed, index);
  PathResult out;
  out.trajectory = simulate(sc.initial, sc.params, sc.measure, sc.integrator, rng);
  out.lyapunov = sc.initial.i > 0.0 ? lyapunov_estimate(out.trajectory)
                                    : -std::numeric_limits<double>::infinity();
  out.average_i = time_average(out.trajectory, Component::i);
  return out;
}

void fill_compartment(CompartmentStats& stats, const std::vector<PathResult>& paths,
                      std::size_t n_times, Component c) {
  const std::size_t n = paths.size();
  stats.mean.resize(n_times);
  stats.variance.resize(n_times);
  stats.q05.resize(n_times);
  stats.q50.resize(n_times);
  stats.q95.resize(n_times);
  std::vector<double> column(n);
  for (std::size_t t = 0; t < n_times; ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      column[k] = component_of(paths[k].trajectory.states[t], c);
    }
    // Shifted by the first path so identical paths give their exact value
    // and zero variance.
    const double shift = column.front();
    double sum = 0.0;
    for (double v : column) sum += v - shift;
    const double offset = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : column) ss += (v - shift - offset) * (v - shift - offset);
    stats.mean[t] = shift + offset;
    stats.variance[t] = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
    std::sort(column.begin(), column.end());
    stats.q05[t] = sorted_quantile(column, 0.05);
    stats.q50[t] = sorted_quantile(column, 0.50);
    stats.q95[t] = sorted_quantile(column, 0.95);
  }
}

}  // namespace

EnsembleStats run_ensemble(const Scenario& sc, std::size_t n_paths,
                           std::uint64_t master_seed, EnsembleOptions options) {
  if (n_paths < 1) throw ValidationError("n_paths must be at least 1");

  std::vector<PathResult> paths(n_paths);
  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_paths));

  if (threads <= 1) {
    for (std::size_t k = 0; k < n_paths; ++k) paths[k] = run_path(sc, master_seed, k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
          for (std::size_t k = next++; k < n_paths; k = next++) {
            try {
              paths[k] = run_path(sc, master_seed, k);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              next = n_paths;
              return;
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  EnsembleStats stats;
  stats.n_paths = n_paths;
  stats.times = paths.front().trajectory.times;
  const std::size_t n_times = stats.times.size();
  fill_compartment(stats.s, paths, n_times, Component::s);
  fill_compartment(stats.i, paths, n_times, Component::i);
  fill_compartment(stats.r, paths, n_times, Component::r);

  stats.extinct_fraction.resize(n_times);
  for (std::size_t t = 0; t < n_times; ++t) {
    std::size_t extinct = 0;
    for (const auto& p : paths) {
      if (p.trajectory.states[t].i < kExtinctionFloor) ++extinct;
    }
    stats.extinct_fraction[t] = static_cast<double>(extinct) / static_cast<double>(n_paths);
  }

  stats.lyapunov_estimates.reserve(n_paths);
  stats.time_average_i.reserve(n_paths);
  stats.terminal_i.reserve(n_paths);
  for (const auto& p : paths) {
    stats.lyapunov_estimates.push_back(p.lyapunov);
    stats.time_average_i.push_back(p.average_i);
    stats.terminal_i.push_back(p.trajectory.states.back().i);
    stats.total_jumps += p.trajectory.jump_count;
    stats.total_clamps += p.trajectory.clamp_count;
  }
  return stats;
}

double time_average(const Trajectory& traj, Component c) {
  if (traj.states.empty()) throw ValidationError("time_average of an empty trajectory");
  const std::size_t n = traj.states.size();
  if (n == 1) return component_of(traj.states.front(), c);
  double integral = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double h = traj.times[k] - traj.times[k - 1];
    integral += 0.5 * h * (component_of(traj.states[k - 1], c) + component_of(traj.states[k], c));
  }
  return integral / (traj.times.back() - traj.times.front());
}

double lyapunov_estimate(const Trajectory& traj, double floor) {
  if (traj.states.empty()) throw ValidationError("lyapunov_estimate of an empty trajectory");
  const double i0 = traj.states.front().i;
  if (!(i0 > 0.0)) throw ValidationError("lyapunov_estimate needs I(0) > 0");
  const double t_end = traj.times.back() - traj.times.front();
  if (!(t_end > 0.0)) throw ValidationError("lyapunov_estimate needs a positive horizon");
  const double i_end = std::max(traj.states.back().i, floor);
  return (std::log(i_end) - std::log(i0)) / t_end;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  return sorted_quantile(values, q);
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::extinct:
      return "extinct";
    case Outcome::persistent:
      return "persistent";
    case Outcome::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

Outcome classify(const EnsembleStats& stats, const StochasticThresholds& th) {
  const double extinct = stats.terminal_extinct_fraction();
  if (extinct >= 0.9 && quantile(stats.lyapunov_estimates, 0.5) < 0.0) {
    return Outcome::extinct;
  }
  if (extinct <= 0.1) {
    if (!th.persistence_limits) return Outcome::persistent;
    if (quantile(stats.time_average_i, 0.5) > 0.5 * th.persistence_limits->i_star) {
      return Outcome::persistent;
    }
  }
  return Outcome::indeterminate;
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::epsilon:
      return "epsilon";
    case SweepParameter::theta:
      return "theta";
    case SweepParameter::xi:
      return "xi";
    case SweepParameter::psi0_proxy:
      return "psi0-proxy";
  }
  return "unknown";
}

Scenario apply_sweep_value(const Scenario& base, SweepParameter parameter, double value) {
  Scenario sc = base;
  switch (parameter) {
    case SweepParameter::epsilon: {
      if (base.measure.empty()) {
        throw ValidationError("epsilon sweep needs a non-empty jump measure");
      }
      std::vector<JumpAtom> atoms(base.measure.atoms().begin(), base.measure.atoms().end());
      for (auto& a : atoms) a.amplitude = value;
      sc.measure = JumpMeasure(std::move(atoms));
      break;
    }
    case SweepParameter::theta:
      sc.params.theta = value;
      break;
    case SweepParameter::xi:
      sc.params.xi = value;
      break;
    case SweepParameter::psi0_proxy:
      sc.params.xi = value * sc.params.eta * (sc.params.eta + sc.params.gamma) / sc.params.theta;
      break;
  }
  sc.params.validate();
  return sc;
}

SweepTable sweep(const Scenario& base, SweepParameter parameter, std::span<const double> grid,
                 std::size_t n_paths, std::uint64_t master_seed, EnsembleOptions options) {
  if (grid.empty()) throw ValidationError("sweep grid must not be empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw ValidationError("sweep grid must be strictly increasing");
    }
  }
  SweepTable table;
  table.parameter = parameter;
  table.rows.reserve(grid.size());
  for (double value : grid) {
    const Scenario sc = apply_sweep_value(base, parameter, value);
    const StochasticThresholds th = sc.thresholds();
    const EnsembleStats stats = run_ensemble(sc, n_paths, master_seed, options);
    SweepRow row;
    row.value = value;
    row.psi0 = psi0(sc.params);
    row.psi = th.psi;
    row.extinct_fraction = stats.terminal_extinct_fraction();
    row.mean_terminal_i = stats.i.mean.back();
    row.outcome = classify(stats, th);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace levysir
