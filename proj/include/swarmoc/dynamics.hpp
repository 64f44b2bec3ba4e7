#pragma once

#include <Eigen/Dense>
#include <utility>

#include "swarmoc/model.hpp"

namespace swarmoc {

/// Right-hand sides of the four state systems and two costate systems. All
/// functions are pure; matrices are d x N with one particle per column, and
/// the mean-field reduction is computed once per call in a fixed order so
/// results are bitwise reproducible.

/// dx_i/dt = Omega_i x_i + (kappa/N) sum_k (x_k - <x_i,x_k> x_i)
///           + u_i - (<u_i,x_i>/|x_i|^2) x_i.
/// For unit columns and skew Omega the result is tangent to the sphere.
Eigen::MatrixXd first_order_rhs(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u,
                                const ModelParams& params);

/// dx_i/dt = v_i,
/// dv_i/dt = -(|v_i|^2/|x_i|^2) x_i - (gamma/m) v_i
///           + (kappa/(mN)) sum_j (x_j - <x_i,x_j> x_i / |x_i|^2)
///           + u_i - (<u_i,x_i>/|x_i|^2) x_i.
/// Nonzero natural frequencies are rejected here; they are only supported in
/// control-free first-order simulation.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> second_order_rhs(const Eigen::MatrixXd& x,
                                                             const Eigen::MatrixXd& v,
                                                             const Eigen::MatrixXd& u,
                                                             const ModelParams& params);

/// Costate equation for the first-order control problem with running cost
/// (1/N) sum_j |x_j - xbar|^2 + (lambda/N) sum_j |u_j|^2. Returns -dp_i/dt:
///
///   (kappa/N) sum_j (p_j - <x_j,p_j> x_j)
///   - kappa <x_i,p_i> xbar - kappa <x_i,xbar> p_i
///   - <x_i,p_i> u_i - <u_i,x_i> p_i + 2 <u_i,x_i> <x_i,p_i> x_i
///   + (2/N) (x_i - xbar)
///
/// This is the transposed Jacobian of first_order_rhs (including the
/// derivative of the 1/|x|^2 factor, whose radial contribution vanishes on
/// tangent perturbations but is kept for exactness) plus the derivative of
/// the running cost, evaluated at unit-norm states. The gradcheck command
/// verifies it against central differences end to end.
Eigen::MatrixXd first_order_adjoint_rhs(const Eigen::MatrixXd& p, const Eigen::MatrixXd& x,
                                        const Eigen::MatrixXd& u, const ModelParams& params);

/// Costate equations for the second-order control problem. Returns
/// (-dp_i/dt, -dq_i/dt) with
///
///   -dp_i/dt = -|v_i|^2 q_i + 2 |v_i|^2 <x_i,q_i> x_i
///              + (kappa/(mN)) sum_j (q_j - <x_j,q_j> x_j)
///              - (kappa/m) <x_i,q_i> xbar - (kappa/m) <x_i,xbar> q_i
///              + 2 (kappa/m) <x_i,xbar> <x_i,q_i> x_i
///              - <x_i,q_i> u_i - <u_i,x_i> q_i + 2 <u_i,x_i> <x_i,q_i> x_i
///              + (2/N) (x_i - xbar)
///   -dq_i/dt = p_i - 2 <x_i,q_i> v_i - (gamma/m) q_i
///
/// derived and validated exactly as the first-order one.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> second_order_adjoint_rhs(
    const Eigen::MatrixXd& p, const Eigen::MatrixXd& q, const Eigen::MatrixXd& x,
    const Eigen::MatrixXd& v, const Eigen::MatrixXd& u, const ModelParams& params);

}  // namespace swarmoc
