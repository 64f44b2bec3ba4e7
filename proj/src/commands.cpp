#include "swarmoc/commands.hpp"

#include <iostream>

#include <nlohmann/json.hpp>

#include "swarmoc/diagnostics.hpp"
#include "swarmoc/errors.hpp"
#include "swarmoc/integrate.hpp"
#include "swarmoc/objective.hpp"
#include "swarmoc/output.hpp"
#include "swarmoc/rng.hpp"

namespace swarmoc {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIntegrator = 2;
constexpr int kExitStepFailure = 3;

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

nlohmann::json base_report(const RunConfig& cfg, const Trajectory& traj, const ControlGrid& u) {
  nlohmann::json j = config_json(cfg);
  const InvariantReport inv = check_invariants(traj, u);
  j.update(invariant_json(inv));
  j["raw_max_norm_drift"] = traj.max_norm_drift;
  j["raw_max_tangency_drift"] = traj.max_tangency_drift;
  const CostBreakdown cost = evaluate_cost(traj, u, cfg.params);
  j["cost_total"] = cost.total;
  j["cost_tracking"] = cost.tracking;
  j["cost_energy"] = cost.energy;
  if (cfg.model_order() == Order::second) {
    const double v0 = traj.states.front().max_speed();
    const double margin = wellposedness_margin(cfg.params, v0, inv.control_bound_m);
    j["wellposedness_margin"] = margin;
    j["wellposedness_satisfied"] = margin < 1.0;
    if (const auto cv = velocity_bound_cv(cfg.params, v0, inv.control_bound_m)) {
      j["velocity_bound_cv"] = *cv;
    }
  }
  return j;
}

int guard(const RunConfig& cfg, int (*body)(const RunConfig&)) {
  try {
    cfg.validate();
    return body(cfg);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const IntegrationError& err) {
    std::cerr << "integrator abort: " << err.what() << "\n";
    return kExitIntegrator;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
}

int simulate_body(const RunConfig& cfg) {
  const ControlProblem problem = make_problem(cfg);
  const TimeGrid grid = TimeGrid::from_params(problem.params);
  const ControlGrid u = ControlGrid::zero(grid, cfg.params.d, cfg.params.n);

  const Trajectory traj = integrate_forward(problem.initial, u, problem.params, cfg.renorm);
  write_file_atomic(cfg.out_dir / "trajectory.csv", trajectory_csv(traj));
  write_file_atomic(cfg.out_dir / "metrics.csv", metrics_csv(traj));
  write_json(cfg.out_dir / "report.json", base_report(cfg, traj, u));
  std::cout << "simulate: wrote " << (cfg.out_dir / "trajectory.csv").string() << "\n";
  return kExitOk;
}

nlohmann::json optimize_report_json(const OptimizeReport& report) {
  nlohmann::json j;
  j["iterations"] = report.iterations;
  j["termination"] = to_string(report.termination);
  j["best_iteration"] = report.best_iteration;
  j["best_cost"] = report.cost_history[static_cast<std::size_t>(report.best_iteration)].total;
  j["zero_control_cost"] = report.cost_history.front().total;
  j["final_grad_norm"] = report.grad_norm_history.back();
  j["bb_fallbacks"] = report.fallback_iterations;
  if (!report.margin_history.empty()) {
    j["wellposedness_margin_initial"] = report.margin_history.front();
    j["wellposedness_margin_final"] = report.margin_history.back();
    j["wellposedness_warning"] = report.margin_warning;
  }
  if (report.failure_node) j["failure_node"] = *report.failure_node;
  return j;
}

int optimize_body(const RunConfig& cfg) {
  const ControlProblem problem = make_problem(cfg);
  const OptimizeReport report = optimize(problem, cfg.opt);
  const bool failed = report.termination == Termination::step_failure;

  write_file_atomic(cfg.out_dir / "history.csv", history_csv(report));
  write_file_atomic(cfg.out_dir / "control.csv",
                    control_csv(report.u_star, report.best_trajectory.grid));
  write_file_atomic(cfg.out_dir / "trajectory.csv", trajectory_csv(report.best_trajectory));
  write_file_atomic(cfg.out_dir / "metrics.csv", metrics_csv(report.best_trajectory));

  nlohmann::json j = base_report(cfg, report.best_trajectory, report.u_star);
  j.update(optimize_report_json(report));
  j["FAILED"] = failed;
  write_json(cfg.out_dir / "report.json", j);

  std::cout << "optimize: " << to_string(report.termination) << " after " << report.iterations
            << " iterations, best cost " << format_double(j["best_cost"].get<double>()) << "\n";
  return failed ? kExitStepFailure : kExitOk;
}

int compare_body(const RunConfig& cfg) {
  const ControlProblem problem = make_problem(cfg);
  const TimeGrid grid = TimeGrid::from_params(problem.params);

  const OptimizeReport report = optimize(problem, cfg.opt);
  const bool failed = report.termination == Termination::step_failure;

  const ControlGrid zero = ControlGrid::zero(grid, cfg.params.d, cfg.params.n);
  const Trajectory free_run = integrate_forward(problem.initial, zero, problem.params, cfg.renorm);

  write_file_atomic(cfg.out_dir / "compare.csv", compare_csv(report.best_trajectory, free_run));
  write_file_atomic(cfg.out_dir / "trajectory_controlled.csv",
                    trajectory_csv(report.best_trajectory));
  write_file_atomic(cfg.out_dir / "trajectory_free.csv", trajectory_csv(free_run));
  write_file_atomic(cfg.out_dir / "control.csv",
                    control_csv(report.u_star, report.best_trajectory.grid));
  write_file_atomic(cfg.out_dir / "history.csv", history_csv(report));

  nlohmann::json j = base_report(cfg, report.best_trajectory, report.u_star);
  j.update(optimize_report_json(report));
  j["terminal_position_variance_controlled"] = position_variance(report.best_trajectory.states.back());
  j["terminal_position_variance_free"] = position_variance(free_run.states.back());
  j["FAILED"] = failed;
  write_json(cfg.out_dir / "report.json", j);

  std::cout << "compare: terminal position variance "
            << format_double(j["terminal_position_variance_controlled"].get<double>())
            << " (controlled) vs "
            << format_double(j["terminal_position_variance_free"].get<double>()) << " (free)\n";
  return failed ? kExitStepFailure : kExitOk;
}

}  // namespace

int run_simulate(const RunConfig& cfg) { return guard(cfg, simulate_body); }
int run_optimize(const RunConfig& cfg) { return guard(cfg, optimize_body); }
int run_compare(const RunConfig& cfg) { return guard(cfg, compare_body); }

int run_gradcheck(const RunConfig& cfg, bool flip_sign) {
  try {
    cfg.validate();
    const ControlProblem problem = make_problem(cfg);
    const TimeGrid grid = TimeGrid::from_params(problem.params);

    // Check at a generic nonzero control so control-coupled costate terms are
    // exercised; stream and magnitude fixed by the seed.
    ControlGrid u = ControlGrid::zero(grid, cfg.params.d, cfg.params.n);
    SplitMix64 stream = substream(cfg.seed, StreamPurpose::generic, 0);
    for (auto& uk : u.values) {
      for (Eigen::Index i = 0; i < uk.cols(); ++i) {
        for (Eigen::Index c = 0; c < uk.rows(); c += 2) {
          const auto [a, b] = stream.next_gaussian_pair();
          uk(c, i) = 0.5 * a;
          if (c + 1 < uk.rows()) uk(c + 1, i) = 0.5 * b;
        }
      }
    }

    const GradientCheck check =
        check_gradient(problem, u, cfg.fd_eps, static_cast<std::size_t>(cfg.fd_max_coords),
                       cfg.subsample_seed, flip_sign);

    nlohmann::json j = config_json(cfg);
    j["relative_error"] = check.relative_error;
    j["threshold"] = kGradCheckThreshold;
    j["coords_compared"] = check.coords_compared;
    j["pass"] = check.pass;
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& s : check.coords) {
      coords.push_back({s.node, s.particle, s.component});
    }
    j["coordinate_subsample"] = coords;
    write_json(cfg.out_dir / "gradcheck.json", j);

    std::cout << "gradcheck: relative error " << format_double(check.relative_error)
              << (check.pass ? " PASS" : " FAIL") << "\n";
    return check.pass ? kExitOk : kExitConfig;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const IntegrationError& err) {
    std::cerr << "integrator abort: " << err.what() << "\n";
    return kExitIntegrator;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace swarmoc
