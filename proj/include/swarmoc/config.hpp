#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "swarmoc/model.hpp"
#include "swarmoc/optimizer.hpp"

namespace swarmoc {

/// Everything a run needs, assembled from a flat key = value config file
/// (one pair per line, '#' comments, no nesting) plus command-line overrides.
/// Unknown keys are rejected so typos fail fast.
struct RunConfig {
  ModelParams params;
  OptimizeConfig opt;

  int order = 1;                 // 1 or 2
  std::uint64_t seed = 0;        // initial-data streams
  std::uint64_t subsample_seed = 0;  // oracle coordinate subsample
  bool renorm = true;
  bool hemisphere = false;       // mirror initial points into the x0 >= 0 half-space
  double v0_scale = 0.0;         // initial tangential speed (second order)
  double omega_scale = 0.0;      // natural-frequency magnitude (first order, control-free)
  double fd_eps = 1e-5;          // central-difference step
  int fd_max_coords = 500;       // oracle subsample cap
  std::filesystem::path out_dir = "out";

  Order model_order() const { return order == 2 ? Order::second : Order::first; }

  /// Cross-field validation beyond ModelParams/OptimizeConfig; throws
  /// ConfigError naming the field.
  void validate() const;

  /// Ordered echo of every key, sufficient to re-run the experiment.
  std::map<std::string, std::string> echo() const;
};

/// Parses a config file; missing file or malformed line throws ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Parses config text (exposed for tests).
RunConfig parse_config(const std::string& text);

/// Seeded initial data per the config: positions from sample_sphere (mirrored
/// into a hemisphere when asked), velocities from sample_tangent_set.
SwarmState make_initial_state(const RunConfig& cfg);

/// Natural-frequency list: empty when omega_scale == 0, otherwise one skew
/// matrix per particle, omega_scale * (G - G^T)/2 for seeded Gaussian G.
std::vector<Eigen::MatrixXd> make_omega(const RunConfig& cfg);

/// ControlProblem assembled from the config (params.omega filled in).
ControlProblem make_problem(const RunConfig& cfg);

}  // namespace swarmoc
