#include "levysir/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "levysir/errors.hpp"

namespace levysir {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << name << " must be positive (got " << value << ")";
    throw ValidationError(msg.str());
  }
}

void require_nonnegative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    std::ostringstream msg;
    msg << name << " must be non-negative (got " << value << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

void EpidemicParams::validate() const {
  require_positive(theta, "theta");
  require_nonnegative(xi, "xi");
  require_positive(eta, "eta");
  require_positive(rho, "rho");
  require_positive(gamma, "gamma");
}

void SirState::validate() const {
  require_nonnegative(s, "S");
  require_nonnegative(i, "I");
  require_nonnegative(r, "R");
}

JumpMeasure::JumpMeasure(std::vector<JumpAtom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& atom = atoms_[k];
    if (!std::isfinite(atom.amplitude) || atom.amplitude <= -1.0) {
      std::ostringstream msg;
      msg << "jump amplitude must be > -1 so that ln(1 + amplitude) is defined"
          << " (atom " << k << " has " << atom.amplitude << ")";
      throw ValidationError(msg.str());
    }
    if (!std::isfinite(atom.rate) || atom.rate < 0.0) {
      std::ostringstream msg;
      msg << "jump rate must be finite and non-negative (atom " << k << " has "
          << atom.rate << ")";
      throw ValidationError(msg.str());
    }
  }
}

double JumpMeasure::total_rate() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                         [](double acc, const JumpAtom& a) { return acc + a.rate; });
}

double JumpMeasure::log_square_moment() const {
  double sum = 0.0;
  for (const auto& a : atoms_) {
    const double l = std::log1p(a.amplitude);
    sum += a.rate * l * l;
  }
  return sum;
}

Derivative drift(const SirState& x, const EpidemicParams& p) {
  const double infection = p.xi * x.s * x.i;
  return {
      p.theta - infection - p.eta * x.s + p.rho * x.r,
      infection - (p.eta + p.gamma) * x.i,
      p.gamma * x.i - (p.eta + p.rho) * x.r,
  };
}

JumpDelta jump_delta(const SirState& x, double amplitude) {
  const double moved = amplitude * x.s * x.i;
  return {-moved, moved};
}

double total_population_closed_form(double n0, const EpidemicParams& p, double t) {
  const double carrying = p.theta / p.eta;
  return carrying + (n0 - carrying) * std::exp(-p.eta * t);
}

}  // namespace levysir
