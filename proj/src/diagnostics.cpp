#include "swarmoc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmoc {

double control_bound(const ControlGrid& u, const TimeGrid& grid) {
  if (u.num_nodes() != grid.num_nodes()) {
    throw std::invalid_argument("control_bound: grid size mismatch");
  }
  if (u.values.empty() || u.values.front().size() == 0) return 0.0;
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(u.values.front().cols());
  for (int k = 0; k < grid.num_nodes(); ++k) {
    acc += grid.weight(k) * grid.dt *
           u.values[static_cast<std::size_t>(k)].colwise().squaredNorm().transpose().array();
  }
  return std::sqrt(acc.maxCoeff());
}

InvariantReport check_invariants(const Trajectory& traj, const ControlGrid& u) {
  if (u.num_nodes() != traj.grid.num_nodes()) {
    throw std::invalid_argument("check_invariants: grid size mismatch");
  }
  InvariantReport report;
  for (const auto& s : traj.states) {
    report.max_norm_drift = std::max(report.max_norm_drift, s.max_norm_deviation());
    report.max_tangency_drift = std::max(report.max_tangency_drift, s.max_tangency_deviation());
    report.max_speed = std::max(report.max_speed, s.max_speed());
  }
  report.control_bound_m = control_bound(u, traj.grid);
  return report;
}

namespace {

double growth_factor(const ModelParams& p, double v0, double m_bound) {
  return v0 + 2.0 * p.kappa * p.t_final / p.m + 2.0 * m_bound * std::sqrt(p.t_final);
}

}  // namespace

double wellposedness_margin(const ModelParams& params, double v0, double m_bound) {
  if (!(params.gamma > 0.0)) return std::numeric_limits<double>::infinity();
  return (params.m / params.gamma) * growth_factor(params, v0, m_bound) *
         (std::exp(params.gamma * params.t_final / params.m) - 1.0);
}

std::optional<double> velocity_bound_cv(const ModelParams& params, double v0, double m_bound) {
  const double margin = wellposedness_margin(params, v0, m_bound);
  if (!(margin < 1.0)) return std::nullopt;
  return std::exp(params.gamma * params.t_final / params.m) * growth_factor(params, v0, m_bound) /
         (1.0 - margin);
}

}  // namespace swarmoc
