#pragma once

#include <Eigen/Dense>
#include <vector>

#include "swarmoc/model.hpp"

namespace swarmoc {

/// Uniform node grid t_k = k*dt, k = 0..K. Nodes are computed by index, never
/// by accumulation, so t_K == T exactly up to one multiplication.
struct TimeGrid {
  double t_final = 0.0;
  double dt = 0.0;
  int k_steps = 0;  // K

  static TimeGrid from_params(const ModelParams& p) {
    return {p.t_final, p.dt, p.num_steps()};
  }

  int num_nodes() const { return k_steps + 1; }
  double node(int k) const { return static_cast<double>(k) * dt; }

  /// Trapezoidal node weight: 1/2 at both ends, 1 inside.
  double weight(int k) const { return (k == 0 || k == k_steps) ? 0.5 : 1.0; }

  bool operator==(const TimeGrid&) const = default;
};

/// Control values u_i(t_k): one d x N matrix per node, K+1 nodes. The forward
/// pass holds u constant on [t_k, t_{k+1}), so node K only enters the cost
/// quadrature; it is kept so gradients share this shape.
struct ControlGrid {
  std::vector<Eigen::MatrixXd> values;

  static ControlGrid zero(const TimeGrid& grid, int d, int n);

  int num_nodes() const { return static_cast<int>(values.size()); }
  bool same_shape(const ControlGrid& other) const;
  bool all_finite() const;
};

/// Gradients live on the same grid as controls; entries are read against the
/// dt-weighted trapezoidal inner product below.
using GradientGrid = ControlGrid;

/// <a, b> = sum_k w_k dt sum_i <a_i(t_k), b_i(t_k)>.
double weighted_dot(const ControlGrid& a, const ControlGrid& b, const TimeGrid& grid);
double weighted_norm(const ControlGrid& a, const TimeGrid& grid);

/// Forward-solve output: states at every node plus the raw (pre-renormalization)
/// manifold drift seen while stepping.
struct Trajectory {
  TimeGrid grid;
  std::vector<SwarmState> states;

  double max_norm_drift = 0.0;      // max_k,i | |x_i(t_k)| - 1 |, raw
  double max_tangency_drift = 0.0;  // max_k,i |<x_i, v_i>(t_k)|, raw

  Order order() const { return states.front().order; }
};

/// Backward-solve output; states[K] is exactly zero.
struct AdjointTrajectory {
  TimeGrid grid;
  std::vector<AdjointState> states;
};

}  // namespace swarmoc
