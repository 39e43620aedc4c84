#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levysir/errors.hpp"
#include "levysir/montecarlo.hpp"

namespace levysir {

struct SweepSpec {
  SweepParameter parameter = SweepParameter::xi;
  std::vector<double> grid;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Externally quoted numbers to compare computed quantities against in reports.
struct ReferenceValues {
  std::optional<double> psi0;
  std::optional<double> psi;
  std::optional<double> s_star;
  std::optional<double> i_star;
  std::optional<double> r_star;

  bool empty() const { return !psi0 && !psi && !s_star && !i_star && !r_star; }

  friend bool operator==(const ReferenceValues&, const ReferenceValues&) = default;
};

struct ScenarioConfig {
  Scenario scenario;
  std::size_t n_paths = 1000;
  std::uint64_t master_seed = 1;
  std::optional<SweepSpec> sweep;
  ReferenceValues reference;

  /// Checks every component invariant; throws ValidationError.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parse or validation failure inside a config document. `line()` is 1-based,
/// 0 when the problem is not tied to a line (e.g. a missing key).
class ConfigError : public ValidationError {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& what);

  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

/// Parses a flat key-value document:
///
///   # comment
///   params.theta = 0.0073
///   [integrator]          # prefixes following keys with "integrator."
///   dt = 0.1
///
/// Recognised keys:
///   params.{theta,xi,eta,rho,gamma}         required
///   initial.{s,i,r}                         required
///   jump.amplitudes, jump.rates             comma lists of equal length
///   integrator.dt            default 0.1
///   integrator.t_end         default 600
///   integrator.record_every  default 10
///   integrator.scheme        jump_euler (default) | deterministic_rk4
///   ensemble.paths           default 1000
///   ensemble.seed            default 1
///   analysis.phi_override
///   sweep.parameter          epsilon | theta | xi | psi0-proxy
///   sweep.grid               comma list
///   reference.{psi0,psi,s_star,i_star,r_star}
///
/// Unknown and repeated keys are rejected. The result is validated.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws IoError if it cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Writes every field with round-trip precision; parse_config inverts it.
std::string serialize_config(const ScenarioConfig& config);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

}  // namespace levysir
