#pragma once

#include <optional>
#include <vector>

#include "swarmoc/grid.hpp"
#include "swarmoc/model.hpp"
#include "swarmoc/objective.hpp"

namespace swarmoc {

struct OptimizeConfig {
  double tol = 1e-4;       // stop when the weighted-L2 gradient norm drops below
  int k_max = 200;         // iteration cap
  double alpha0 = 1e-2;    // bootstrap step, also the fallback when BB degenerates
  double alpha_min = 1e-6; // BB step clamps; BB is non-monotone and can blow up
  double alpha_max = 1e2;  //   on nonconvex objectives without them

  void validate() const;
};

enum class Termination { tol_reached, kmax_reached, step_failure };

const char* to_string(Termination t);

struct BBStep {
  double alpha = 0.0;
  bool fallback = false;  // raw quotient was non-positive, non-finite, or 0/0
};

/// Barzilai-Borwein step from successive iterates and gradients,
///   alpha = <du, dg> / |dg|^2
/// in the dt-weighted inner product, clamped to [alpha_min, alpha_max].
/// Degenerate quotients fall back to alpha0 and are flagged, not fatal.
BBStep bb_step(const ControlGrid& u_prev, const ControlGrid& u_cur, const GradientGrid& g_prev,
               const GradientGrid& g_cur, const TimeGrid& grid, const OptimizeConfig& cfg);

struct OptimizeReport {
  ControlGrid u_star;                      // best-cost iterate (BB is non-monotone)
  int iterations = 0;
  std::vector<CostBreakdown> cost_history;   // length iterations + 1
  std::vector<double> grad_norm_history;     // length iterations + 1
  std::vector<double> step_history;          // alpha leaving iterate k; length iterations
                                             //   (+1 on step_failure: the step that failed)
  std::vector<int> fallback_iterations;      // iterates whose BB step fell back to alpha0
  std::vector<double> margin_history;        // well-posedness margin per iterate (second order)
  bool margin_warning = false;               // margin >= 1 somewhere (reported, never enforced)
  Termination termination = Termination::kmax_reached;
  int best_iteration = 0;
  Trajectory best_trajectory;                // forward solve of u_star
  std::optional<int> failure_node;           // integrator abort node on step_failure
};

/// Gradient descent on the control grid: per iteration one forward solve, one
/// backward costate solve, a gradient assembly and a BB update. u starts at
/// zero; iteration 0 takes a plain alpha0 step (standing in for the unknown
/// previous iterate BB needs), after which BB steps apply. Returns the
/// best-cost iterate. tol = +inf returns immediately with the zero control
/// and 0 iterations.
OptimizeReport optimize(const ControlProblem& problem, const OptimizeConfig& cfg = {});

}  // namespace swarmoc
