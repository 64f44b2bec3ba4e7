#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "swarmoc/config.hpp"
#include "swarmoc/diagnostics.hpp"
#include "swarmoc/grid.hpp"
#include "swarmoc/optimizer.hpp"

namespace swarmoc {

/// Floats are serialized with 17 significant digits so any 64-bit value
/// round-trips losslessly and reruns are byte-identical.
std::string format_double(double value);

/// Writes content to path atomically (temp file in the same directory, then
/// rename), creating parent directories as needed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Long format: one row per (t, particle): t,particle,x0..x{d-1}[,v0..v{d-1}].
std::string trajectory_csv(const Trajectory& traj);

/// Wide format: t,position_variance[,velocity_variance].
std::string metrics_csv(const Trajectory& traj);

/// t,particle,u0..u{d-1}.
std::string control_csv(const ControlGrid& u, const TimeGrid& grid);

/// iteration,total,tracking,energy,grad_norm,step_size; one row per iterate,
/// step_size 0 on the final row when no step left it.
std::string history_csv(const OptimizeReport& report);

/// Paired variance columns of the controlled and control-free runs.
std::string compare_csv(const Trajectory& controlled, const Trajectory& free_run);

nlohmann::json config_json(const RunConfig& cfg);
nlohmann::json invariant_json(const InvariantReport& report);

}  // namespace swarmoc
