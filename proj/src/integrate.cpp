#include "swarmoc/integrate.hpp"

#include <algorithm>
#include <string>

#include "swarmoc/dynamics.hpp"
#include "swarmoc/errors.hpp"
#include "swarmoc/geometry.hpp"

namespace swarmoc {

namespace {

void check_grid(const ControlGrid& u, const ModelParams& params) {
  const int nodes = params.num_steps() + 1;
  if (u.num_nodes() != nodes) {
    throw std::invalid_argument("integrate: control grid has " + std::to_string(u.num_nodes()) +
                                " nodes, expected " + std::to_string(nodes));
  }
  for (const auto& uk : u.values) {
    if (uk.rows() != params.d || uk.cols() != params.n) {
      throw std::invalid_argument("integrate: control grid shape mismatch");
    }
  }
  if (!u.all_finite()) {
    throw std::invalid_argument("integrate: non-finite control entries");
  }
}

void check_band(const Eigen::MatrixXd& x, bool finite_ok, int node) {
  if (!finite_ok) {
    throw IntegrationError("integrate: non-finite state", node);
  }
  const auto norms = x.colwise().norm();
  if (norms.minCoeff() < kNormBandLow || norms.maxCoeff() > kNormBandHigh) {
    throw IntegrationError("integrate: state norm left [1/2, 3/2]", node);
  }
}

}  // namespace

Trajectory integrate_forward(const SwarmState& initial, const ControlGrid& u,
                             const ModelParams& params, bool renorm) {
  params.validate();
  check_grid(u, params);
  if (initial.x.rows() != params.d || initial.x.cols() != params.n) {
    throw std::invalid_argument("integrate_forward: initial state shape mismatch");
  }
  if (!initial.x.allFinite() || (initial.order == Order::second && !initial.v.allFinite())) {
    throw std::invalid_argument("integrate_forward: non-finite initial state");
  }
  check_band(initial.x, true, 0);

  const TimeGrid grid = TimeGrid::from_params(params);
  const double dt = grid.dt;
  const bool second = initial.order == Order::second;

  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(static_cast<std::size_t>(grid.num_nodes()));
  traj.states.push_back(initial);
  traj.max_norm_drift = initial.max_norm_deviation();
  traj.max_tangency_drift = initial.max_tangency_deviation();

  Eigen::MatrixXd x = initial.x;
  Eigen::MatrixXd v = initial.v;

  for (int k = 0; k < grid.k_steps; ++k) {
    const Eigen::MatrixXd& uk = u.values[static_cast<std::size_t>(k)];
    if (!second) {
      const Eigen::MatrixXd k1 = first_order_rhs(x, uk, params);
      const Eigen::MatrixXd k2 = first_order_rhs(x + 0.5 * dt * k1, uk, params);
      const Eigen::MatrixXd k3 = first_order_rhs(x + 0.5 * dt * k2, uk, params);
      const Eigen::MatrixXd k4 = first_order_rhs(x + dt * k3, uk, params);
      x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else {
      const auto [k1x, k1v] = second_order_rhs(x, v, uk, params);
      const auto [k2x, k2v] = second_order_rhs(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, uk, params);
      const auto [k3x, k3v] = second_order_rhs(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, uk, params);
      const auto [k4x, k4v] = second_order_rhs(x + dt * k3x, v + dt * k3v, uk, params);
      x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      v += (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }

    const bool finite = x.allFinite() && (!second || v.allFinite());
    check_band(x, finite, k + 1);

    // Raw drift is measured before any renormalization.
    traj.max_norm_drift =
        std::max(traj.max_norm_drift, (x.colwise().norm().array() - 1.0).abs().maxCoeff());
    if (second) {
      traj.max_tangency_drift = std::max(
          traj.max_tangency_drift, (x.array() * v.array()).colwise().sum().abs().maxCoeff());
    }

    if (renorm) {
      if (second) {
        renormalize_columns(x, v);
      } else {
        renormalize_columns(x);
      }
    }

    traj.states.push_back(second ? SwarmState::second_order(x, v) : SwarmState::first_order(x));
  }
  return traj;
}

AdjointTrajectory integrate_adjoint_backward(const Trajectory& traj, const ControlGrid& u,
                                             const ModelParams& params) {
  params.validate();
  check_grid(u, params);
  if (traj.grid != TimeGrid::from_params(params) ||
      static_cast<int>(traj.states.size()) != traj.grid.num_nodes()) {
    throw std::invalid_argument("integrate_adjoint_backward: trajectory grid mismatch");
  }

  const TimeGrid grid = traj.grid;
  const double dt = grid.dt;
  const bool second = traj.order() == Order::second;

  AdjointTrajectory adj;
  adj.grid = grid;
  adj.states.assign(static_cast<std::size_t>(grid.num_nodes()),
                    AdjointState::zero(traj.order(), params.d, params.n));

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(params.d, params.n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(params.d, params.n);

  // In reversed time tau = T - t the costate obeys dP/dtau = (-dp/dt), which
  // is exactly what the adjoint RHS functions return.
  for (int k = grid.k_steps - 1; k >= 0; --k) {
    const auto& right = traj.states[static_cast<std::size_t>(k + 1)];
    const auto& left = traj.states[static_cast<std::size_t>(k)];
    const Eigen::MatrixXd xm = 0.5 * (left.x + right.x);
    const Eigen::MatrixXd& uk = u.values[static_cast<std::size_t>(k)];

    if (!second) {
      const Eigen::MatrixXd k1 = first_order_adjoint_rhs(p, right.x, uk, params);
      const Eigen::MatrixXd k2 = first_order_adjoint_rhs(p + 0.5 * dt * k1, xm, uk, params);
      const Eigen::MatrixXd k3 = first_order_adjoint_rhs(p + 0.5 * dt * k2, xm, uk, params);
      const Eigen::MatrixXd k4 = first_order_adjoint_rhs(p + dt * k3, left.x, uk, params);
      p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else {
      const Eigen::MatrixXd vm = 0.5 * (left.v + right.v);
      const auto [k1p, k1q] = second_order_adjoint_rhs(p, q, right.x, right.v, uk, params);
      const auto [k2p, k2q] = second_order_adjoint_rhs(p + 0.5 * dt * k1p, q + 0.5 * dt * k1q,
                                                       xm, vm, uk, params);
      const auto [k3p, k3q] = second_order_adjoint_rhs(p + 0.5 * dt * k2p, q + 0.5 * dt * k2q,
                                                       xm, vm, uk, params);
      const auto [k4p, k4q] =
          second_order_adjoint_rhs(p + dt * k3p, q + dt * k3q, left.x, left.v, uk, params);
      p += (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      q += (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    }

    if (!p.allFinite() || (second && !q.allFinite())) {
      throw IntegrationError("integrate_adjoint_backward: non-finite costate", k);
    }
    auto& out = adj.states[static_cast<std::size_t>(k)];
    out.p = p;
    if (second) out.q = q;
  }
  return adj;
}

}  // namespace swarmoc
