#pragma once

#include <Eigen/Dense>
#include <vector>

namespace swarmoc {

enum class Order { first, second };

/// Physical and numerical parameters shared by every solve.
///
/// omega holds one skew-symmetric d x d natural-frequency matrix per
/// particle; an empty vector means all zero. Nonzero frequencies are only
/// admissible in control-free first-order simulation.
struct ModelParams {
  int n = 1;            // particle count N
  int d = 2;            // ambient dimension, states live on S^{d-1}
  double kappa = 0.0;   // coupling strength, >= 0
  double m = 1.0;       // mass, > 0 (second order)
  double gamma = 0.0;   // friction, >= 0 (second order)
  double lambda = 1.0;  // control-energy weight, > 0
  double t_final = 1.0; // horizon T, > 0
  double dt = 0.01;     // step, 0 < dt <= T, T/dt integral
  std::vector<Eigen::MatrixXd> omega;

  /// Number of RK4 steps K = T/dt. validate() guarantees integrality.
  int num_steps() const;

  bool has_omega() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Positions (and, second order, velocities) of N particles, one per column.
struct SwarmState {
  Order order = Order::first;
  Eigen::MatrixXd x;  // d x N
  Eigen::MatrixXd v;  // d x N, second order only (else 0 x 0)

  static SwarmState first_order(Eigen::MatrixXd x);
  static SwarmState second_order(Eigen::MatrixXd x, Eigen::MatrixXd v);

  int n() const { return static_cast<int>(x.cols()); }
  int d() const { return static_cast<int>(x.rows()); }

  double max_norm_deviation() const;     // max_i | |x_i| - 1 |
  double max_tangency_deviation() const; // max_i |<x_i, v_i>| (0 for first order)
  double max_speed() const;              // max_i |v_i| (0 for first order)
};

/// Costate mirror of SwarmState: p pairs with x, q with v.
struct AdjointState {
  Eigen::MatrixXd p;  // d x N
  Eigen::MatrixXd q;  // d x N, second order only (else 0 x 0)

  static AdjointState zero(Order order, int d, int n);
};

/// One control problem instance: everything a forward solve needs except the
/// control itself.
struct ControlProblem {
  SwarmState initial;
  ModelParams params;
  bool renorm = true;

  Order order() const { return initial.order; }
};

}  // namespace swarmoc
