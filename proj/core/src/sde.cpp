#include "levysir/sde.hpp"

#include <cmath>
#include <sstream>

#include "levysir/errors.hpp"

namespace levysir {

namespace {

SirState axpy(const SirState& x, double h, const Derivative& d) {
  return {x.s + h * d.ds, x.i + h * d.di, x.r + h * d.dr};
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::deterministic_rk4:
      return "deterministic_rk4";
    case Scheme::jump_euler:
      return "jump_euler";
  }
  return "unknown";
}

void IntegratorConfig::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw ValidationError("dt must be positive");
  }
  if (!std::isfinite(t_end) || t_end < dt) {
    throw ValidationError("t_end must be at least dt");
  }
  if (record_every < 1) {
    throw ValidationError("record_every must be at least 1");
  }
  const double ratio = t_end / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    std::ostringstream msg;
    msg << "t_end (" << t_end << ") must be an integer multiple of dt (" << dt << ")";
    throw ValidationError(msg.str());
  }
}

std::size_t IntegratorConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

unsigned clamp_nonnegative(SirState& x) {
  unsigned n = 0;
  for (double* v : {&x.s, &x.i, &x.r}) {
    if (*v < 0.0) {
      *v = 0.0;
      ++n;
    }
  }
  return n;
}

Step step_deterministic(const SirState& x, const EpidemicParams& p, double dt) {
  const Derivative k1 = drift(x, p);
  const Derivative k2 = drift(axpy(x, 0.5 * dt, k1), p);
  const Derivative k3 = drift(axpy(x, 0.5 * dt, k2), p);
  const Derivative k4 = drift(axpy(x, dt, k3), p);
  const double w = dt / 6.0;
  Step out;
  out.state = {
      x.s + w * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
      x.i + w * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di),
      x.r + w * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr),
  };
  out.clamps = clamp_nonnegative(out.state);
  return out;
}

Step step_euler(const SirState& x, const EpidemicParams& p, double dt) {
  Step out;
  out.state = axpy(x, dt, drift(x, p));
  out.clamps = clamp_nonnegative(out.state);
  return out;
}

Step step_jump(const SirState& x, const EpidemicParams& p, const JumpMeasure& measure,
               double dt, RandomStream& rng) {
  const SirState pre = axpy(x, dt, drift(x, p));
  Step out;
  out.state = pre;
  for (const auto& atom : measure.atoms()) {
    const double expected = atom.rate * dt;
    const std::uint64_t fired = rng.poisson(expected);
    out.jumps += fired;
    // Firings minus compensator, both acting on the pre-jump state.
    const double net = static_cast<double>(fired) - expected;
    const JumpDelta d = jump_delta(pre, net * atom.amplitude);
    out.state.s += d.ds;
    out.state.i += d.di;
  }
  out.clamps = clamp_nonnegative(out.state);
  return out;
}

Trajectory simulate(const SirState& initial, const EpidemicParams& params,
                    const JumpMeasure& measure, const IntegratorConfig& config,
                    RandomStream& rng) {
  params.validate();
  initial.validate();
  config.validate();
  if (config.scheme == Scheme::jump_euler && config.dt * measure.total_rate() >= 1.0) {
    std::ostringstream msg;
    msg << "dt * total jump rate = " << config.dt * measure.total_rate()
        << " must be < 1; reduce dt";
    throw ValidationError(msg.str());
  }

  const std::size_t n = config.steps();
  Trajectory traj;
  traj.seed = rng.master_seed();
  traj.path_index = rng.path_index();
  const std::size_t n_records = n / config.record_every + 2;
  traj.times.reserve(n_records);
  traj.states.reserve(n_records);
  traj.jumps_cumulative.reserve(n_records);

  const auto record = [&](std::size_t k, const SirState& x) {
    traj.times.push_back(static_cast<double>(k) * config.dt);
    traj.states.push_back(x);
    traj.jumps_cumulative.push_back(traj.jump_count);
  };

  SirState x = initial;
  record(0, x);
  for (std::size_t k = 1; k <= n; ++k) {
    const Step step = config.scheme == Scheme::deterministic_rk4
                          ? step_deterministic(x, params, config.dt)
                          : step_jump(x, params, measure, config.dt, rng);
    x = step.state;
    traj.jump_count += step.jumps;
    traj.clamp_count += step.clamps;
    if (k % config.record_every == 0 || k == n) record(k, x);
  }
  return traj;
}

Trajectory simulate(const SirState& initial, const EpidemicParams& params,
                    const JumpMeasure& measure, const IntegratorConfig& config,
                    std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return simulate(initial, params, measure, config, rng);
}

}  // namespace levysir
