#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "levysir/model.hpp"
#include "levysir/random.hpp"

namespace levysir {

enum class Scheme { deterministic_rk4, jump_euler };

const char* to_string(Scheme s);

struct IntegratorConfig {
  double dt = 0.1;
  double t_end = 600.0;
  std::size_t record_every = 10;
  Scheme scheme = Scheme::jump_euler;

  /// dt > 0, t_end >= dt, record_every >= 1, and t_end an integer multiple
  /// of dt (relative slack 1e-9).
  void validate() const;
  std::size_t steps() const;

  friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

/// Result of a single step. `clamps` counts compartments that would have gone
/// negative and were set to zero.
struct Step {
  SirState state;
  std::uint64_t jumps = 0;
  unsigned clamps = 0;
};

/// Sets negative compartments to zero and returns how many were changed.
unsigned clamp_nonnegative(SirState& state);

/// Classical fourth-order Runge-Kutta step of the deterministic system.
Step step_deterministic(const SirState& state, const EpidemicParams& params, double dt);

/// Explicit Euler step of the deterministic system.
Step step_euler(const SirState& state, const EpidemicParams& params, double dt);

/// Euler step of the jump system driven by the compensated Poisson measure.
///
/// Order within a step: the Euler drift update gives x-. For every atom
/// (a, lambda), k ~ Poisson(lambda dt) firings are drawn and I receives
/// (k - lambda dt) * a * S- * I- while S receives the negative of the same
/// amount, all evaluated at x-. R has no stochastic term. Clamping happens
/// once, after all atoms.
Step step_jump(const SirState& state, const EpidemicParams& params,
               const JumpMeasure& measure, double dt, RandomStream& rng);

struct Trajectory {
  std::vector<double> times;
  std::vector<SirState> states;
  /// Cumulative jump firings up to each recorded time.
  std::vector<std::uint64_t> jumps_cumulative;
  std::uint64_t jump_count = 0;
  std::uint64_t clamp_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
};

/// Integrates from t = 0 to config.t_end, recording step 0, every
/// record_every-th step, and the final step.
///
/// Throws ValidationError for invalid inputs, or when the jump scheme is used
/// with dt * total_rate >= 1 (per-step thinning no longer resolves
/// individual jumps).
Trajectory simulate(const SirState& initial, const EpidemicParams& params,
                    const JumpMeasure& measure, const IntegratorConfig& config,
                    RandomStream& rng);

/// Same as above with the stream for path 0 of `seed`.
Trajectory simulate(const SirState& initial, const EpidemicParams& params,
                    const JumpMeasure& measure, const IntegratorConfig& config,
                    std::uint64_t seed);

}  // namespace levysir
