#include "swarmoc/model.hpp"

#include <cmath>
#include <string>

#include "swarmoc/errors.hpp"

namespace swarmoc {

int ModelParams::num_steps() const {
  return static_cast<int>(std::lround(t_final / dt));
}

bool ModelParams::has_omega() const {
  for (const auto& w : omega) {
    if (w.size() > 0 && w.cwiseAbs().maxCoeff() > 0.0) return true;
  }
  return false;
}

void ModelParams::validate() const {
  if (n < 1) throw ConfigError("params.n: N >= 1 required");
  if (d < 2) throw ConfigError("params.d: d >= 2 required");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ConfigError("params.kappa: kappa >= 0 required");
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("params.m: m > 0 required");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("params.gamma: gamma >= 0 required");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("params.lambda: lambda > 0 required");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("params.T: T > 0 required");
  if (!(dt > 0.0) || !(dt <= t_final)) throw ConfigError("params.dt: 0 < dt <= T required");
  const double k = t_final / dt;
  if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k)) {
    throw ConfigError("params.dt: T/dt must be an integer");
  }
  if (!omega.empty()) {
    if (static_cast<int>(omega.size()) != n) {
      throw ConfigError("params.omega: expected one matrix per particle");
    }
    for (int i = 0; i < n; ++i) {
      const auto& w = omega[static_cast<std::size_t>(i)];
      if (w.rows() != d || w.cols() != d) {
        throw ConfigError("params.omega[" + std::to_string(i) + "]: expected " +
                          std::to_string(d) + "x" + std::to_string(d));
      }
      if ((w + w.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ConfigError("params.omega[" + std::to_string(i) + "]: not skew-symmetric");
      }
    }
  }
}

SwarmState SwarmState::first_order(Eigen::MatrixXd x) {
  SwarmState s;
  s.order = Order::first;
  s.x = std::move(x);
  s.v.resize(0, 0);
  return s;
}

SwarmState SwarmState::second_order(Eigen::MatrixXd x, Eigen::MatrixXd v) {
  if (x.rows() != v.rows() || x.cols() != v.cols()) {
    throw ConfigError("SwarmState: x and v shapes differ");
  }
  SwarmState s;
  s.order = Order::second;
  s.x = std::move(x);
  s.v = std::move(v);
  return s;
}

double SwarmState::max_norm_deviation() const {
  return (x.colwise().norm().array() - 1.0).abs().maxCoeff();
}

double SwarmState::max_tangency_deviation() const {
  if (order == Order::first) return 0.0;
  return (x.array() * v.array()).colwise().sum().abs().maxCoeff();
}

double SwarmState::max_speed() const {
  if (order == Order::first) return 0.0;
  return v.colwise().norm().maxCoeff();
}

AdjointState AdjointState::zero(Order order, int d, int n) {
  AdjointState a;
  a.p = Eigen::MatrixXd::Zero(d, n);
  a.q = order == Order::second ? Eigen::MatrixXd::Zero(d, n) : Eigen::MatrixXd(0, 0);
  return a;
}

}  // namespace swarmoc
