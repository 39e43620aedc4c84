#pragma once

#include <array>
#include <complex>
#include <optional>

#include "levysir/model.hpp"

namespace levysir {

/// Basic reproduction number xi*theta / (eta*(gamma + eta)).
double psi0(const EpidemicParams& params);

struct EquilibriumReport {
  SirState dfe;
  std::optional<SirState> endemic;
  double psi0 = 0.0;
  bool endemic_exists = false;
};

/// Disease-free equilibrium (theta/eta, 0, 0) and, when psi0 > 1, the unique
/// positive endemic equilibrium.
EquilibriumReport equilibria(const EpidemicParams& params);

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Spectrum = std::array<std::complex<double>, 3>;

/// Jacobian of `drift` with respect to (S, I, R).
Matrix3 jacobian(const SirState& state, const EpidemicParams& params);

/// Eigenvalues of a general real 3x3 matrix, sorted by ascending real part.
Spectrum eigenvalues(const Matrix3& m);

enum class Stability { stable, unstable, marginal };

const char* to_string(Stability s);

/// |Re lambda| below this counts as zero when classifying a spectrum.
inline constexpr double kMarginalTolerance = 1e-9;

Stability classify_spectrum(const Spectrum& spectrum,
                            double tol = kMarginalTolerance);

struct StabilityReport {
  /// Reported spectrum at the DFE in the order (-eta, (eta+gamma)(psi0-1),
  /// -rho-eta). These are the closed-form values.
  Spectrum eigenvalues;
  /// Spectrum from the general solver, kept for cross-checking.
  Spectrum solver_eigenvalues;
  Stability classification = Stability::marginal;
};

/// Local stability of the disease-free equilibrium. The classification uses
/// the closed-form spectrum.
StabilityReport classify_dfe_stability(const EpidemicParams& params);

/// L(S, I) = (S - b - b ln(S/b)) + (I - 1 - ln I), with b = (eta+gamma)/xi.
double lyapunov_function(const SirState& state, const EpidemicParams& params);

/// dL/dt = (1 - b/S) dS/dt + (1 - 1/I) dI/dt along the deterministic flow.
/// Throws ValidationError when S <= 0, I <= 0 or xi == 0.
double lyapunov_derivative(const SirState& state, const EpidemicParams& params);

/// Jump correction sum_k rate_k * (ln(1 + a_k theta/eta) - a_k theta/eta).
/// Always <= 0. Throws DomainError when some 1 + a_k theta/eta <= 0.
double phi(const JumpMeasure& measure, const EpidemicParams& params);

/// Stochastic reproduction number psi0 - phi/(eta+gamma).
double psi(const EpidemicParams& params, double phi_value);

/// Almost-sure growth rate of ln I near the DFE for the simulated dynamics:
/// (eta+gamma)(psi0 - 1) + phi. Itô's formula applied to ln I of the jump
/// system adds phi (not -phi) to the deterministic rate.
double growth_exponent(const EpidemicParams& params, const JumpMeasure& measure);

/// Amplitude a > 0 such that a single atom of the given rate yields
/// phi == target_phi. Requires target_phi < 0 and rate > 0.
double calibrate_amplitude(const EpidemicParams& params, double rate,
                           double target_phi);

struct PersistenceLimits {
  double s_star = 0.0;
  double i_star = 0.0;
  double r_star = 0.0;
};

/// Limits of the time averages <S>, <I>, <R> for a given psi:
/// I* = (eta+gamma)(psi-1), R* = gamma/(eta+rho) I*,
/// S* = theta/eta - (eta+gamma+rho)/(eta+rho) I*.
/// Evaluated for any psi; only meaningful when psi > 1.
PersistenceLimits persistence_limits(const EpidemicParams& params, double psi);

struct StochasticThresholds {
  /// phi used for psi: the override when given, else the measure value.
  double phi = 0.0;
  /// phi computed from the measure, always reported.
  double phi_from_measure = 0.0;
  bool phi_overridden = false;
  double psi = 0.0;
  /// (eta+gamma)(psi - 1); negative iff psi < 1.
  double extinction_rate_bound = 0.0;
  /// Present iff psi > 1.
  std::optional<PersistenceLimits> persistence_limits;
};

StochasticThresholds thresholds(const EpidemicParams& params,
                                const JumpMeasure& measure,
                                std::optional<double> phi_override = std::nullopt);

}  // namespace levysir
