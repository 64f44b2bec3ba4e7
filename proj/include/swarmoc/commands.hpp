#pragma once

#include "swarmoc/config.hpp"

namespace swarmoc {

/// CLI drivers; each validates the config, runs one experiment and writes its
/// files under cfg.out_dir. Returned exit codes: 0 success, 1 config error,
/// 2 integrator abort, 3 optimizer step failure.
int run_simulate(const RunConfig& cfg);
int run_optimize(const RunConfig& cfg);
int run_compare(const RunConfig& cfg);
int run_gradcheck(const RunConfig& cfg, bool flip_sign = false);

}  // namespace swarmoc
