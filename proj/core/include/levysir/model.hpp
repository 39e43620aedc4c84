#pragma once

#include <span>
#include <vector>

namespace levysir {

/// Rate constants of the SIR system with recruitment and relapse.
///
///   dS/dt = theta - xi*S*I - eta*S + rho*R
///   dI/dt = xi*S*I - (eta + gamma)*I
///   dR/dt = gamma*I - (eta + rho)*R
struct EpidemicParams {
  double theta = 0.0;  ///< recruitment rate
  double xi = 0.0;     ///< contact rate
  double eta = 0.0;    ///< outflow (death) rate
  double rho = 0.0;    ///< relapse rate R -> S
  double gamma = 0.0;  ///< recovery rate I -> R

  /// Throws ValidationError naming the first offending field. xi may be
  /// zero (no transmission); every other rate must be strictly positive.
  void validate() const;

  friend bool operator==(const EpidemicParams&, const EpidemicParams&) = default;
};

struct SirState {
  double s = 0.0;
  double i = 0.0;
  double r = 0.0;

  double total() const { return s + i + r; }

  /// Throws ValidationError if a compartment is negative or not finite.
  void validate() const;

  friend bool operator==(const SirState&, const SirState&) = default;
};

struct JumpAtom {
  double amplitude = 0.0;  ///< relative jump size epsilon, > -1
  double rate = 0.0;       ///< intensity per unit time, >= 0

  friend bool operator==(const JumpAtom&, const JumpAtom&) = default;
};

/// Finite-activity Levy measure written as a sum of weighted point masses.
/// Each atom fires as an independent Poisson stream of jumps with relative
/// size `amplitude`.
class JumpMeasure {
 public:
  JumpMeasure() = default;
  /// Throws ValidationError if any amplitude is <= -1, any rate is negative,
  /// or either is not finite.
  explicit JumpMeasure(std::vector<JumpAtom> atoms);

  static JumpMeasure single(double amplitude, double rate) {
    return JumpMeasure({JumpAtom{amplitude, rate}});
  }

  std::span<const JumpAtom> atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_rate() const;
  /// Sum of rate * ln(1 + amplitude)^2, the square-log moment that must stay
  /// bounded for the stochastic system to be well posed.
  double log_square_moment() const;

  friend bool operator==(const JumpMeasure&, const JumpMeasure&) = default;

 private:
  std::vector<JumpAtom> atoms_;
};

struct Derivative {
  double ds = 0.0;
  double di = 0.0;
  double dr = 0.0;
};

/// Right-hand side of the deterministic system.
Derivative drift(const SirState& state, const EpidemicParams& params);

struct JumpDelta {
  double ds = 0.0;
  double di = 0.0;
};

/// Change caused by one firing of a jump of relative size `amplitude`:
/// (-amplitude*S*I, +amplitude*S*I). The two components are exact negatives.
JumpDelta jump_delta(const SirState& state, double amplitude);

/// N(t) for dN/dt = theta - eta*N with N(0) = n0. Jumps move mass between S
/// and I only, so this also governs S+I+R of the stochastic system.
double total_population_closed_form(double n0, const EpidemicParams& params,
                                    double t);

}  // namespace levysir
