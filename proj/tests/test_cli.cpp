#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "levysir_app/commands.hpp"

namespace fs = std::filesystem;
using namespace levysir;
using namespace levysir::app;

namespace {

const fs::path kGolden = LEVYSIR_GOLDEN_DIR;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("levysir_" + std::string(info->test_suite_name()) + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

fs::path write_config(const TempDir& dir, const std::string& text) {
  const fs::path p = dir / "scenario.cfg";
  std::ofstream(p) << text;
  return p;
}

// Runs the installed-style executable and returns its exit status.
int run_binary(const std::string& args) {
  const std::string cmd = std::string(LEVYSIR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct InProcess {
  int code = 0;
  std::string out;
  std::string err;
};

InProcess run_in_process(std::vector<std::string> args) {
  args.insert(args.begin(), "levysir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  InProcess r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

constexpr const char* kBaselineConfig =
    "params.theta = 0.0073\nparams.xi = 0.003\nparams.eta = 0.001\nparams.rho = 0.01\n"
    "params.gamma = 0.02\ninitial.s = 6\ninitial.i = 1\ninitial.r = 0.3\n"
    "jump.amplitudes = 0.001\njump.rates = 1\n";

}  // namespace

TEST(Golden, TrajectoryCsv) {
  TempDir dir;
  ASSERT_EQ(run_binary("simulate --quiet --config " + (kGolden / "trajectory.cfg").string() +
                       " --out " + dir.path().string()),
            0);
  EXPECT_EQ(read_file(dir / "trajectory.csv"), read_file(kGolden / "trajectory.csv"));
}

TEST(Golden, EnsembleCsv) {
  TempDir dir;
  ASSERT_EQ(run_binary("ensemble --quiet --config " + (kGolden / "ensemble.cfg").string() +
                       " --out " + dir.path().string()),
            0);
  EXPECT_EQ(read_file(dir / "ensemble.csv"), read_file(kGolden / "ensemble.csv"));
}

TEST(Golden, SweepCsv) {
  TempDir dir;
  ASSERT_EQ(run_binary("sweep --quiet --config " + (kGolden / "sweep.cfg").string() + " --out " +
                       dir.path().string()),
            0);
  EXPECT_EQ(read_file(dir / "sweep.csv"), read_file(kGolden / "sweep.csv"));
}

TEST(Golden, HeadersAreFixed) {
  const auto first_line = [](const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
  };
  EXPECT_EQ(first_line(kGolden / "trajectory.csv"), "t,S,I,R,jumps_cum");
  EXPECT_EQ(first_line(kGolden / "ensemble.csv"),
            "t,S_mean,S_q05,S_q50,S_q95,I_mean,I_q05,I_q50,I_q95,R_mean,R_q05,R_q50,R_q95,"
            "extinct_fraction");
  EXPECT_EQ(first_line(kGolden / "sweep.csv"),
            "param_value,psi0,psi,extinct_fraction,mean_terminal_I");
}

TEST(ExitCodes, SuccessAndFailures) {
  TempDir dir;
  const fs::path good = write_config(dir, kBaselineConfig);
  EXPECT_EQ(run_binary("analyze --quiet --config " + good.string()), 0);

  const fs::path bad_eta = dir / "bad_eta.cfg";
  std::ofstream(bad_eta) << std::string(kBaselineConfig) + "params.eta = 0\n";
  EXPECT_EQ(run_binary("analyze --config " + bad_eta.string()), 1);

  std::string zero_eta = kBaselineConfig;
  zero_eta.replace(zero_eta.find("params.eta = 0.001"), 18, "params.eta = 0");
  std::ofstream(dir / "zero_eta.cfg") << zero_eta;
  EXPECT_EQ(run_binary("analyze --config " + (dir / "zero_eta.cfg").string()), 1);

  EXPECT_EQ(run_binary("analyze"), 1);
  EXPECT_EQ(run_binary("frobnicate"), 1);
  EXPECT_EQ(run_binary("reproduce fig9"), 1);

  // 1 + a*theta/eta < 0, so the jump correction is undefined.
  std::string negative_jump = kBaselineConfig;
  negative_jump.replace(negative_jump.find("jump.amplitudes = 0.001"), 23, "jump.amplitudes = -0.5");
  std::ofstream(dir / "negative_jump.cfg") << negative_jump;
  EXPECT_EQ(run_binary("analyze --config " + (dir / "negative_jump.cfg").string()), 2);

  EXPECT_EQ(run_binary("analyze --config " + (dir / "missing.cfg").string()), 3);
  EXPECT_EQ(run_binary("simulate --config " + good.string() + " --out /dev/null/sub"), 3);
}

TEST(Analyze, ReportsThresholds) {
  TempDir dir;
  const fs::path cfg = write_config(dir, std::string(kBaselineConfig) + "analysis.phi_override = 9.126e-4\n");
  const InProcess r = run_in_process({"analyze", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1.0429"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.9994"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("-2.6516e-05"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("note: phi computed from any jump measure is <= 0"), std::string::npos);
}

TEST(Analyze, FlagOverridesConfig) {
  TempDir dir;
  const fs::path cfg = write_config(dir, kBaselineConfig);
  const InProcess r =
      run_in_process({"analyze", "--config", cfg.string(), "--phi-override", "9.126e-4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.9994"), std::string::npos) << r.out;
}

TEST(Analyze, NoInfectionGivesNoEndemicPoint) {
  TempDir dir;
  std::string text = kBaselineConfig;
  text.replace(text.find("params.xi = 0.003"), 17, "params.xi = 0");
  const fs::path cfg = write_config(dir, text);
  const InProcess r = run_in_process({"analyze", "--config", cfg.string(), "--out", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("none (psi0 <= 1)"), std::string::npos) << r.out;
  const std::string csv = read_file(dir / "analysis.csv");
  EXPECT_NE(csv.find("psi0,0\n"), std::string::npos) << csv;
  EXPECT_EQ(csv.find("endemic_"), std::string::npos) << csv;
}

TEST(Simulate, RowCountFollowsGrid) {
  TempDir dir;
  const std::string text =
      "params.theta = 0.0073\nparams.xi = 0.003\nparams.eta = 0.001\nparams.rho = 0.01\n"
      "params.gamma = 0.02\ninitial.s = 6\ninitial.i = 1\ninitial.r = 0.3\n"
      "integrator.t_end = 60\nintegrator.record_every = 1\n";
  const fs::path cfg = write_config(dir, text);
  const InProcess r = run_in_process({"simulate", "--config", cfg.string(), "--out", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("warning: jump_euler with an empty jump measure"), std::string::npos);
  std::ifstream in(dir / "trajectory.csv");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 1u + 601u);  // header + t_end/dt + 1
}

TEST(Reproduce, RejectsConfigAndOverride) {
  EXPECT_EQ(run_in_process({"reproduce", "fig2", "--config", "x.cfg"}).code, 1);
  EXPECT_EQ(run_in_process({"reproduce", "fig2", "--phi-override", "1e-3"}).code, 1);
}

TEST(Presets, MatchFigureSettings) {
  const ScenarioConfig b = preset(Figure::fig1b);
  ASSERT_TRUE(b.sweep);
  EXPECT_EQ(b.sweep->parameter, SweepParameter::theta);
  EXPECT_EQ(b.scenario.params.xi, 0.003);
  EXPECT_EQ(b.scenario.params.eta, 0.001);
  EXPECT_EQ(b.scenario.params.rho, 0.01);
  EXPECT_EQ(b.scenario.params.gamma, 0.02);
  EXPECT_EQ(b.scenario.measure.atoms()[0].amplitude, 0.001);
  for (double v : b.sweep->grid) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 0.0073);
  }
  EXPECT_EQ(preset(Figure::fig1a).sweep->parameter, SweepParameter::epsilon);
  EXPECT_EQ(preset(Figure::fig1c).sweep->parameter, SweepParameter::xi);
  EXPECT_EQ(preset(Figure::fig1d).sweep->parameter, SweepParameter::psi0_proxy);

  const ScenarioConfig f2 = preset(Figure::fig2);
  EXPECT_EQ(f2.scenario.params.xi, 0.003);
  EXPECT_NEAR(f2.scenario.thresholds().psi, 0.9994, 1e-4);
  EXPECT_NEAR(phi(f2.scenario.measure, f2.scenario.params), -9.126e-4, 1e-15);
  const ScenarioConfig f3 = preset(Figure::fig3);
  EXPECT_EQ(f3.scenario.params.xi, 0.0033);
  EXPECT_NEAR(f3.scenario.thresholds().psi, 1.1042, 1e-3);

  for (auto f : {Figure::fig1a, Figure::fig1b, Figure::fig1c, Figure::fig1d, Figure::fig2,
                 Figure::fig3}) {
    EXPECT_EQ(parse_figure(to_string(f)), f);
    EXPECT_NO_THROW(preset(f).validate());
  }
  EXPECT_THROW(parse_figure("fig4"), ValidationError);
}

TEST(Reproduce, Fig3WritesDataAndManifest) {
  TempDir dir;
  const InProcess r = run_in_process(
      {"reproduce", "fig3", "--paths", "100", "--out", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"analysis.txt", "ensemble.csv", "trajectory.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / "fig3" / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(read_file(dir / "fig3" / "manifest.json"));
  EXPECT_EQ(manifest["figure"], "fig3");
  EXPECT_EQ(manifest["chosen_defaults"]["n_paths"], 100);
  EXPECT_EQ(manifest["chosen_defaults"]["dt"], 0.1);
  EXPECT_EQ(manifest["chosen_defaults"]["t_end"], 2000.0);
  EXPECT_TRUE(manifest["chosen_defaults"].contains("jump_calibration"));
  EXPECT_LE(manifest["terminal_extinct_fraction"].get<double>(), 0.1);
  EXPECT_EQ(manifest["outcome"], "persistent");

  const std::string report = read_file(dir / "fig3" / "analysis.txt");
  EXPECT_NE(report.find("7.2938"), std::string::npos) << report;
  EXPECT_NE(report.find("reference 7.2977: DIFFERS"), std::string::npos) << report;
  EXPECT_NE(report.find("reference 0.0022: agrees"), std::string::npos) << report;
  EXPECT_NE(report.find("reference 0.0015: DIFFERS"), std::string::npos) << report;

  std::ifstream in(dir / "fig3" / "ensemble.csv");
  std::string line;
  std::string last;
  while (std::getline(in, line)) last = line;
  const double extinct = std::stod(last.substr(last.rfind(',') + 1));
  EXPECT_LE(extinct, 0.1);
}
