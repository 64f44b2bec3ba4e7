#pragma once

#include <optional>

#include "swarmoc/grid.hpp"
#include "swarmoc/model.hpp"

namespace swarmoc {

/// Numerical health of a trajectory against the model's analytic guarantees:
/// unit norms, tangency, the running speed maximum and the control bound M.
struct InvariantReport {
  double max_norm_drift = 0.0;      // max_{i,t} | |x_i(t)| - 1 |
  double max_tangency_drift = 0.0;  // max_{i,t} |<x_i(t), v_i(t)>|, second order
  double max_speed = 0.0;           // sup_t max_i |v_i(t)|
  double control_bound_m = 0.0;     // max_i of the dt-weighted L2 norm of u_i
};

/// max_i sqrt( sum_k w_k dt |u_i(t_k)|^2 ).
double control_bound(const ControlGrid& u, const TimeGrid& grid);

/// Scans every stored node; drift fields reflect the stored states (so a
/// renormalized run reports its post-renormalization residual, while the raw
/// stepping drift lives on the Trajectory itself).
InvariantReport check_invariants(const Trajectory& traj, const ControlGrid& u);

/// (m/gamma) (V0 + 2 kappa T / m + 2 M sqrt(T)) (exp(gamma T / m) - 1).
/// Global existence of the second-order system is guaranteed when this is
/// < 1. The bound is vacuous at gamma <= 0: returns +inf as the flag. It is
/// reported, never enforced; typical experiment scales violate it and still
/// integrate fine (the condition is sufficient, not necessary).
double wellposedness_margin(const ModelParams& params, double v0, double m_bound);

/// A priori speed bound exp(gamma T / m) (V0 + 2 kappa T / m + 2 M sqrt(T))
/// / (1 - margin); empty when the margin is not < 1.
std::optional<double> velocity_bound_cv(const ModelParams& params, double v0, double m_bound);

}  // namespace swarmoc
