#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <string_view>

#include "levysir/montecarlo.hpp"
#include "levysir/sde.hpp"

namespace levysir::csv {

// Column layouts. Numbers are written with round-trip precision.
inline constexpr std::string_view kTrajectoryHeader = "t,S,I,R,jumps_cum";
inline constexpr std::string_view kEnsembleHeader =
    "t,S_mean,S_q05,S_q50,S_q95,I_mean,I_q05,I_q50,I_q95,R_mean,R_q05,R_q50,R_q95,"
    "extinct_fraction";
inline constexpr std::string_view kSweepHeader =
    "param_value,psi0,psi,extinct_fraction,mean_terminal_I";

void write_trajectory(std::ostream& out, const Trajectory& trajectory);
void write_ensemble(std::ostream& out, const EnsembleStats& stats);
void write_sweep(std::ostream& out, const SweepTable& table);

/// Opens `path` for writing (creating parent directories), calls `body`, and
/// throws IoError with the path if anything fails.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body);

}  // namespace levysir::csv
