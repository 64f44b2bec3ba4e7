#include "swarmoc/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "swarmoc/diagnostics.hpp"
#include "swarmoc/errors.hpp"
#include "swarmoc/integrate.hpp"

namespace swarmoc {

void OptimizeConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("optimize.tol: tol > 0 required");
  if (k_max < 1) throw ConfigError("optimize.k_max: k_max >= 1 required");
  if (!(alpha_min > 0.0) || !(alpha_min <= alpha0) || !(alpha0 <= alpha_max)) {
    throw ConfigError("optimize.alpha: 0 < alpha_min <= alpha0 <= alpha_max required");
  }
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::tol_reached: return "tol-reached";
    case Termination::kmax_reached: return "k_max-reached";
    default: return "step-failure";
  }
}

BBStep bb_step(const ControlGrid& u_prev, const ControlGrid& u_cur, const GradientGrid& g_prev,
               const GradientGrid& g_cur, const TimeGrid& grid, const OptimizeConfig& cfg) {
  if (!u_prev.same_shape(u_cur) || !g_prev.same_shape(g_cur) || !u_cur.same_shape(g_cur)) {
    throw std::invalid_argument("bb_step: grids do not share one shape");
  }
  ControlGrid du = u_cur;
  ControlGrid dg = g_cur;
  for (std::size_t k = 0; k < du.values.size(); ++k) {
    du.values[k] -= u_prev.values[k];
    dg.values[k] -= g_prev.values[k];
  }
  const double denom = weighted_dot(dg, dg, grid);
  const double numer = weighted_dot(du, dg, grid);
  const double raw = numer / denom;  // denom == 0 gives inf/nan, caught below
  if (!std::isfinite(raw) || raw <= 0.0) {
    return {cfg.alpha0, true};
  }
  return {std::clamp(raw, cfg.alpha_min, cfg.alpha_max), false};
}

OptimizeReport optimize(const ControlProblem& problem, const OptimizeConfig& cfg) {
  cfg.validate();
  problem.params.validate();
  if (problem.params.has_omega()) {
    throw ConfigError("optimize: natural frequencies are only supported control-free");
  }
  const TimeGrid grid = TimeGrid::from_params(problem.params);
  const bool second = problem.order() == Order::second;
  const double v0 = problem.initial.max_speed();

  OptimizeReport report;
  ControlGrid u = ControlGrid::zero(grid, problem.params.d, problem.params.n);

  Trajectory traj;
  CostBreakdown cost;
  GradientGrid grad;
  double grad_norm = 0.0;

  auto solve = [&](const ControlGrid& uk) {
    traj = integrate_forward(problem.initial, uk, problem.params, problem.renorm);
    cost = evaluate_cost(traj, uk, problem.params);
    const AdjointTrajectory adj = integrate_adjoint_backward(traj, uk, problem.params);
    grad = assemble_gradient(uk, traj, adj, problem.params);
    grad_norm = weighted_norm(grad, grid);
  };

  auto record = [&](const ControlGrid& uk) {
    report.cost_history.push_back(cost);
    report.grad_norm_history.push_back(grad_norm);
    if (second) {
      const double margin =
          wellposedness_margin(problem.params, v0, control_bound(uk, grid));
      report.margin_history.push_back(margin);
      if (!(margin < 1.0)) report.margin_warning = true;
    }
  };

  solve(u);
  record(u);
  report.u_star = u;
  report.best_trajectory = traj;
  double best_cost = cost.total;

  ControlGrid u_prev;
  GradientGrid g_prev;
  int k = 0;
  while (grad_norm > cfg.tol && k < cfg.k_max) {
    BBStep step{cfg.alpha0, false};  // iteration 0: bootstrap step
    if (k > 0) {
      step = bb_step(u_prev, u, g_prev, grad, grid, cfg);
      if (step.fallback) report.fallback_iterations.push_back(k);
    }
    report.step_history.push_back(step.alpha);

    u_prev = u;
    g_prev = grad;
    for (std::size_t j = 0; j < u.values.size(); ++j) {
      u.values[j] -= step.alpha * grad.values[j];
    }

    try {
      solve(u);
    } catch (const IntegrationError& err) {
      report.termination = Termination::step_failure;
      report.failure_node = err.step();
      report.iterations = k;  // histories cover iterates 0..k
      return report;
    }
    ++k;
    record(u);
    if (cost.total < best_cost) {
      best_cost = cost.total;
      report.u_star = u;
      report.best_trajectory = traj;
      report.best_iteration = k;
    }
  }

  report.iterations = k;
  report.termination = grad_norm <= cfg.tol ? Termination::tol_reached : Termination::kmax_reached;
  return report;
}

}  // namespace swarmoc
