#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "levysir/config.hpp"
#include "random_inputs.hpp"

using namespace levysir;
using levysir::testing::log_uniform;
using levysir::testing::random_params;

namespace {

constexpr const char* kFig2Document = R"(# extinction scenario
[params]
theta = 0.0073
xi    = 0.003
eta   = 0.001
rho   = 0.01
gamma = 0.02

[initial]
s = 6.0
i = 1.0
r = 0.3

[jump]
amplitudes = 0.001
rates      = 1.0   ; one atom

[analysis]
phi_override = 9.126e-4
)";

std::string with_line(std::string doc, const std::string& line) {
  return doc + line + "\n";
}

std::size_t error_line(const std::string& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return std::numeric_limits<std::size_t>::max();
}

}  // namespace

TEST(ParseConfig, ExtinctionScenarioDocument) {
  const ScenarioConfig cfg = parse_config(kFig2Document);
  const auto& p = cfg.scenario.params;
  EXPECT_EQ(p.theta, 0.0073);
  EXPECT_EQ(p.xi, 0.003);
  EXPECT_EQ(p.eta, 0.001);
  EXPECT_EQ(p.rho, 0.01);
  EXPECT_EQ(p.gamma, 0.02);
  ASSERT_EQ(cfg.scenario.measure.atoms().size(), 1u);
  EXPECT_EQ(cfg.scenario.measure.atoms()[0].amplitude, 0.001);
  EXPECT_EQ(cfg.scenario.measure.atoms()[0].rate, 1.0);
  ASSERT_TRUE(cfg.scenario.phi_override);
  EXPECT_EQ(*cfg.scenario.phi_override, 9.126e-4);
  EXPECT_FALSE(cfg.sweep);
  EXPECT_TRUE(cfg.reference.empty());
}

TEST(ParseConfig, Defaults) {
  const ScenarioConfig cfg = parse_config(kFig2Document);
  EXPECT_EQ(cfg.scenario.integrator.dt, 0.1);
  EXPECT_EQ(cfg.scenario.integrator.t_end, 600.0);
  EXPECT_EQ(cfg.scenario.integrator.record_every, 10u);
  EXPECT_EQ(cfg.scenario.integrator.scheme, Scheme::jump_euler);
  EXPECT_EQ(cfg.n_paths, 1000u);
  EXPECT_EQ(cfg.master_seed, 1u);
}

TEST(ParseConfig, DottedKeysAndOptionalSections) {
  const ScenarioConfig cfg = parse_config(
      "params.theta=0.0073\nparams.xi=0.0033\nparams.eta=0.001\nparams.rho=0.01\n"
      "params.gamma=0.02\ninitial.s=6\ninitial.i=1\ninitial.r=0.3\n"
      "integrator.scheme = deterministic_rk4\nintegrator.dt = 0.5\nintegrator.t_end = 100\n"
      "ensemble.paths = 12\nensemble.seed = 18446744073709551615\n"
      "sweep.parameter = psi0-proxy\nsweep.grid = 0.5, 0.9,1.1\n"
      "reference.psi = 1.1042\nreference.s_star = 7.2977\n");
  EXPECT_EQ(cfg.scenario.integrator.scheme, Scheme::deterministic_rk4);
  EXPECT_TRUE(cfg.scenario.measure.empty());
  EXPECT_EQ(cfg.n_paths, 12u);
  EXPECT_EQ(cfg.master_seed, 18446744073709551615ULL);
  ASSERT_TRUE(cfg.sweep);
  EXPECT_EQ(cfg.sweep->parameter, SweepParameter::psi0_proxy);
  EXPECT_EQ(cfg.sweep->grid, (std::vector<double>{0.5, 0.9, 1.1}));
  EXPECT_EQ(cfg.reference.psi, 1.1042);
  EXPECT_EQ(cfg.reference.s_star, 7.2977);
  EXPECT_FALSE(cfg.reference.i_star);
}

TEST(ParseConfig, NonPositiveEtaIsRejected) {
  std::string doc = kFig2Document;
  doc.replace(doc.find("eta   = 0.001"), std::strlen("eta   = 0.001"), "eta   = 0");
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("eta must be positive"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, AmplitudeBelowMinusOneIsRejected) {
  std::string doc = kFig2Document;
  doc.replace(doc.find("amplitudes = 0.001"), std::strlen("amplitudes = 0.001"),
              "amplitudes = -1.5");
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "jump.amplitudes");
    EXPECT_EQ(e.line(), 15u);
    EXPECT_NE(std::string(e.what()).find("> -1"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, ErrorsCarryLineAndKey) {
  const std::string base = kFig2Document;
  EXPECT_EQ(error_line(with_line(base, "bogus = 1")), 20u);
  EXPECT_EQ(error_line(with_line(base, "[params]\ntheta = 1")), 21u);
  EXPECT_EQ(error_line(with_line(base, "[integrator]\ndt = fast")), 21u);
  EXPECT_EQ(error_line(with_line(base, "just words")), 20u);
  EXPECT_EQ(error_line(with_line(base, "[integrator")), 20u);
  EXPECT_EQ(error_line(with_line(base, "[ensemble]\npaths = -3")), 21u);
  EXPECT_EQ(error_line(with_line(base, "[ensemble]\npaths = 0")), 0u);
  EXPECT_EQ(error_line(with_line(base, "[jump]\nrates = 1, 2")), 21u);
  try {
    parse_config("params.theta = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 0u);
    EXPECT_EQ(e.key(), "params.xi");
  }
  EXPECT_THROW(parse_config(with_line(base, "[integrator]\nt_end = 0.15")), ConfigError);
  EXPECT_THROW(parse_config(with_line(base, "[integrator]\nscheme = milstein")), ConfigError);
  EXPECT_THROW(parse_config(with_line(base, "[sweep]\nparameter = rho\ngrid = 1")), ConfigError);
  EXPECT_THROW(parse_config(with_line(base, "[sweep]\nparameter = xi\ngrid = 2, 1")), ConfigError);
}

TEST(LoadConfig, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/levysir.cfg"), IoError);
}

TEST(SerializeConfig, RoundTripProperty) {
  std::mt19937_64 gen(53);
  std::uniform_int_distribution<int> atoms_count(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    ScenarioConfig cfg;
    cfg.scenario.params = random_params(gen);
    cfg.scenario.initial = {10 * unit(gen), unit(gen), unit(gen)};
    std::vector<JumpAtom> atoms;
    for (int a = atoms_count(gen); a > 0; --a) {
      atoms.push_back({-0.9 + 2.0 * unit(gen), log_uniform(gen, 1e-3, 5.0)});
    }
    cfg.scenario.measure = JumpMeasure(std::move(atoms));
    const double dt = log_uniform(gen, 1e-3, 1.0);
    cfg.scenario.integrator = {dt, dt * static_cast<double>(1 + k), 1 + static_cast<std::size_t>(k % 13),
                               k % 2 ? Scheme::jump_euler : Scheme::deterministic_rk4};
    cfg.n_paths = 1 + static_cast<std::size_t>(k);
    cfg.master_seed = gen();
    if (k % 3 == 0) cfg.scenario.phi_override = unit(gen) * 1e-3 - 5e-4;
    if (k % 4 == 0) cfg.sweep = SweepSpec{SweepParameter::epsilon, {unit(gen) * 0.1, 0.2, 0.35}};
    if (k % 5 == 0) cfg.reference.psi0 = unit(gen);
    if (k % 7 == 0) cfg.reference.r_star = unit(gen);
    ASSERT_NO_THROW(cfg.validate());

    const std::string text = serialize_config(cfg);
    const ScenarioConfig back = parse_config(text);
    ASSERT_EQ(back, cfg) << text;
  }
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.0073), "0.0073");
  EXPECT_EQ(format_number(600.0), "600");
  EXPECT_EQ(format_number(9.126e-4), "0.0009126");
  std::mt19937_64 gen(59);
  for (int k = 0; k < 10000; ++k) {
    double v = 0.0;
    const std::uint64_t bits = gen();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    const std::string s = format_number(v);
    ASSERT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
}
