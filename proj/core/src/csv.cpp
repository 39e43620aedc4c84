#include "levysir/csv.hpp"

#include <fstream>
#include <system_error>

#include "levysir/config.hpp"
#include "levysir/errors.hpp"

namespace levysir::csv {

namespace {

void quad(std::ostream& out, const CompartmentStats& c, std::size_t t) {
  out << ',' << format_number(c.mean[t]) << ',' << format_number(c.q05[t]) << ','
      << format_number(c.q50[t]) << ',' << format_number(c.q95[t]);
}

}  // namespace

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out << kTrajectoryHeader << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& x = traj.states[k];
    out << format_number(traj.times[k]) << ',' << format_number(x.s) << ','
        << format_number(x.i) << ',' << format_number(x.r) << ','
        << traj.jumps_cumulative[k] << '\n';
  }
}

void write_ensemble(std::ostream& out, const EnsembleStats& stats) {
  out << kEnsembleHeader << '\n';
  for (std::size_t t = 0; t < stats.times.size(); ++t) {
    out << format_number(stats.times[t]);
    quad(out, stats.s, t);
    quad(out, stats.i, t);
    quad(out, stats.r, t);
    out << ',' << format_number(stats.extinct_fraction[t]) << '\n';
  }
}

void write_sweep(std::ostream& out, const SweepTable& table) {
  out << kSweepHeader << '\n';
  for (const auto& row : table.rows) {
    out << format_number(row.value) << ',' << format_number(row.psi0) << ','
        << format_number(row.psi) << ',' << format_number(row.extinct_fraction) << ','
        << format_number(row.mean_terminal_i) << '\n';
  }
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" + path.parent_path().string() +
                    "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace levysir::csv
