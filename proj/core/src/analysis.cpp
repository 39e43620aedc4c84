#include "levysir/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include "levysir/errors.hpp"

namespace levysir {

namespace {

// ln(1 + x) - x without cancellation for small |x|.
double log1p_minus_x(double x) {
  if (std::abs(x) < 1e-2) {
    // -x^2/2 + x^3/3 - x^4/4 + ...
    double term = -x * x;
    double sum = 0.0;
    for (int k = 2; k <= 14; ++k) {
      sum += term / k;
      term *= -x;
    }
    return sum;
  }
  return std::log1p(x) - x;
}

}  // namespace

double psi0(const EpidemicParams& p) {
  return p.xi * p.theta / (p.eta * (p.gamma + p.eta));
}

EquilibriumReport equilibria(const EpidemicParams& p) {
  EquilibriumReport report;
  report.dfe = SirState{p.theta / p.eta, 0.0, 0.0};
  report.psi0 = psi0(p);
  if (report.psi0 > 1.0) {
    const double excess = report.psi0 - 1.0;
    const double outflow_i = p.eta + p.gamma;
    const double denom = p.xi * (p.eta + p.rho + p.gamma);
    report.endemic = SirState{
        outflow_i / p.xi,
        (p.eta + p.rho) * outflow_i / denom * excess,
        p.gamma * outflow_i / denom * excess,
    };
    report.endemic_exists = true;
  }
  return report;
}

Matrix3 jacobian(const SirState& x, const EpidemicParams& p) {
  return {{
      {-p.eta - p.xi * x.i, -p.xi * x.s, p.rho},
      {p.xi * x.i, p.xi * x.s - (p.eta + p.gamma), 0.0},
      {0.0, p.gamma, -p.rho - p.eta},
  }};
}

Spectrum eigenvalues(const Matrix3& m) {
  Eigen::Matrix3d a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = m[r][c];
  }
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigenvalue solver did not converge");
  }
  Spectrum out;
  for (int k = 0; k < 3; ++k) out[k] = solver.eigenvalues()[k];
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return out;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::marginal:
      return "marginal";
  }
  return "unknown";
}

Stability classify_spectrum(const Spectrum& spectrum, double tol) {
  bool all_negative = true;
  for (const auto& lambda : spectrum) {
    if (lambda.real() > tol) return Stability::unstable;
    if (lambda.real() >= -tol) all_negative = false;
  }
  return all_negative ? Stability::stable : Stability::marginal;
}

StabilityReport classify_dfe_stability(const EpidemicParams& p) {
  const auto eq = equilibria(p);
  StabilityReport report;
  report.eigenvalues = {
      std::complex<double>(-p.eta),
      std::complex<double>((p.eta + p.gamma) * (eq.psi0 - 1.0)),
      std::complex<double>(-p.rho - p.eta),
  };
  report.solver_eigenvalues = eigenvalues(jacobian(eq.dfe, p));
  report.classification = classify_spectrum(report.eigenvalues);
  return report;
}

double lyapunov_function(const SirState& x, const EpidemicParams& p) {
  if (x.s <= 0.0 || x.i <= 0.0 || p.xi <= 0.0) {
    throw ValidationError("Lyapunov function needs S > 0, I > 0 and xi > 0");
  }
  const double b = (p.eta + p.gamma) / p.xi;
  return (x.s - b - b * std::log(x.s / b)) + (x.i - 1.0 - std::log(x.i));
}

double lyapunov_derivative(const SirState& x, const EpidemicParams& p) {
  if (x.s <= 0.0 || x.i <= 0.0 || p.xi <= 0.0) {
    throw ValidationError("Lyapunov derivative needs S > 0, I > 0 and xi > 0");
  }
  const double b = (p.eta + p.gamma) / p.xi;
  const Derivative d = drift(x, p);
  return (1.0 - b / x.s) * d.ds + (1.0 - 1.0 / x.i) * d.di;
}

double phi(const JumpMeasure& measure, const EpidemicParams& p) {
  const double scale = p.theta / p.eta;
  double sum = 0.0;
  for (const auto& atom : measure.atoms()) {
    const double x = atom.amplitude * scale;
    if (!(1.0 + x > 0.0)) {
      std::ostringstream msg;
      msg << "jump correction undefined: 1 + amplitude*theta/eta = " << 1.0 + x
          << " <= 0 for amplitude " << atom.amplitude;
      throw DomainError(msg.str());
    }
    sum += atom.rate * log1p_minus_x(x);
  }
  return sum;
}

double psi(const EpidemicParams& p, double phi_value) {
  return psi0(p) - phi_value / (p.eta + p.gamma);
}

double growth_exponent(const EpidemicParams& p, const JumpMeasure& measure) {
  return (p.eta + p.gamma) * (psi0(p) - 1.0) + phi(measure, p);
}

double calibrate_amplitude(const EpidemicParams& p, double rate, double target_phi) {
  p.validate();
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ValidationError("calibration rate must be positive");
  }
  if (!(target_phi < 0.0)) {
    throw DomainError("a single positive-amplitude atom only produces phi < 0");
  }
  const double per_rate = target_phi / rate;
  // f(x) = ln(1+x) - x - per_rate is decreasing on x > 0 with f(0) > 0.
  const auto f = [per_rate](double x) { return log1p_minus_x(x) - per_rate; };
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  std::uintmax_t iterations = 200;
  const auto [lo_x, hi_x] = boost::math::tools::toms748_solve(
      f, 0.0, hi, f(0.0), f(hi), boost::math::tools::eps_tolerance<double>(52),
      iterations);
  const double x = 0.5 * (lo_x + hi_x);
  return x * p.eta / p.theta;
}

PersistenceLimits persistence_limits(const EpidemicParams& p, double psi_value) {
  PersistenceLimits lim;
  lim.i_star = (p.eta + p.gamma) * (psi_value - 1.0);
  lim.r_star = p.gamma / (p.eta + p.rho) * lim.i_star;
  lim.s_star = p.theta / p.eta - (p.eta + p.gamma + p.rho) / (p.eta + p.rho) * lim.i_star;
  return lim;
}

StochasticThresholds thresholds(const EpidemicParams& p, const JumpMeasure& measure,
                                std::optional<double> phi_override) {
  StochasticThresholds t;
  t.phi_from_measure = phi(measure, p);
  t.phi_overridden = phi_override.has_value();
  t.phi = phi_override.value_or(t.phi_from_measure);
  t.psi = psi(p, t.phi);
  t.extinction_rate_bound = (p.eta + p.gamma) * (t.psi - 1.0);
  if (t.psi > 1.0) t.persistence_limits = persistence_limits(p, t.psi);
  return t;
}

}  // namespace levysir
