#pragma once

#include "swarmoc/grid.hpp"
#include "swarmoc/model.hpp"

namespace swarmoc {

/// State norms outside [1/2, 3/2] abort the solve: past that band the
/// equations no longer describe the sphere system.
inline constexpr double kNormBandLow = 0.5;
inline constexpr double kNormBandHigh = 1.5;

/// Classical fixed-step RK4 on the node grid of params. The control is held
/// constant over each step: all four stages of step k use u(t_k), and u(t_K)
/// is never read here. states[0] is the supplied initial condition, stored
/// untouched.
///
/// With renorm, positions are rescaled to unit norm (and velocities
/// re-projected) after every step; the drift fields still report the raw
/// pre-renormalization deviation, so they stay meaningful as an integrator
/// quality measure.
///
/// Throws IntegrationError when a state norm leaves [1/2, 3/2] or an entry
/// goes non-finite, with the offending node index.
Trajectory integrate_forward(const SwarmState& initial, const ControlGrid& u,
                             const ModelParams& params, bool renorm = true);

/// Backward RK4 for the costate system, from the zero terminal condition at
/// t_K down to t_0. States needed at stage midpoints are linear
/// interpolations of adjacent trajectory nodes; the step covering
/// [t_k, t_{k+1}] uses the control u(t_k) active on that interval, matching
/// the forward hold. states[K] is exactly zero.
AdjointTrajectory integrate_adjoint_backward(const Trajectory& traj, const ControlGrid& u,
                                             const ModelParams& params);

}  // namespace swarmoc
