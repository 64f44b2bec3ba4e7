#include "swarmoc/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "swarmoc/errors.hpp"
#include "swarmoc/geometry.hpp"
#include "swarmoc/integrate.hpp"
#include "swarmoc/rng.hpp"

namespace swarmoc {

namespace {

double variance(const Eigen::MatrixXd& a) {
  if (a.cols() < 1) throw std::invalid_argument("variance: empty state");
  const Eigen::VectorXd mean = a.rowwise().mean();
  return (a.colwise() - mean).squaredNorm() / static_cast<double>(a.cols());
}

}  // namespace

double position_variance(const SwarmState& state) { return variance(state.x); }

double velocity_variance(const SwarmState& state) {
  if (state.order == Order::first) return 0.0;
  return variance(state.v);
}

CostBreakdown evaluate_cost(const Trajectory& traj, const ControlGrid& u,
                            const ModelParams& params) {
  const TimeGrid& grid = traj.grid;
  if (u.num_nodes() != grid.num_nodes()) {
    throw std::invalid_argument("evaluate_cost: control grid size mismatch");
  }
  const double n = static_cast<double>(params.n);
  CostBreakdown cost;
  for (int k = 0; k < grid.num_nodes(); ++k) {
    const double w = grid.weight(k) * grid.dt;
    cost.tracking += w * position_variance(traj.states[static_cast<std::size_t>(k)]);
    cost.energy += w * params.lambda * u.values[static_cast<std::size_t>(k)].squaredNorm() / n;
  }
  cost.total = cost.tracking + cost.energy;
  return cost;
}

Eigen::MatrixXd pmp_control(const AdjointState& adjoint, const SwarmState& state,
                            const ModelParams& params) {
  if (!(params.lambda > 0.0)) throw ConfigError("pmp_control: lambda > 0 required");
  const Eigen::MatrixXd& c = state.order == Order::second ? adjoint.q : adjoint.p;
  return -(static_cast<double>(params.n) / (2.0 * params.lambda)) *
         tangent_project_columns(state.x, c);
}

GradientGrid assemble_gradient(const ControlGrid& u, const Trajectory& traj,
                               const AdjointTrajectory& adj, const ModelParams& params) {
  const TimeGrid& grid = traj.grid;
  if (u.num_nodes() != grid.num_nodes() || adj.grid != grid ||
      static_cast<int>(adj.states.size()) != grid.num_nodes()) {
    throw std::invalid_argument("assemble_gradient: inputs do not share one grid");
  }
  const bool second = traj.order() == Order::second;
  const double scale = 2.0 * params.lambda / static_cast<double>(params.n);

  std::vector<Eigen::MatrixXd> projected(static_cast<std::size_t>(grid.num_nodes()));
  for (int k = 0; k < grid.num_nodes(); ++k) {
    const auto& s = traj.states[static_cast<std::size_t>(k)];
    const auto& a = adj.states[static_cast<std::size_t>(k)];
    projected[static_cast<std::size_t>(k)] = tangent_project_columns(s.x, second ? a.q : a.p);
  }

  GradientGrid g;
  g.values.resize(static_cast<std::size_t>(grid.num_nodes()));
  for (int k = 0; k < grid.num_nodes(); ++k) {
    Eigen::MatrixXd gk = scale * u.values[static_cast<std::size_t>(k)];
    if (k < grid.k_steps) {
      gk += (projected[static_cast<std::size_t>(k)] + projected[static_cast<std::size_t>(k + 1)]) /
            (2.0 * grid.weight(k));
    }
    g.values[static_cast<std::size_t>(k)] = std::move(gk);
  }
  return g;
}

std::vector<CoordSample> all_coordinates(const TimeGrid& grid, int d, int n) {
  std::vector<CoordSample> coords;
  coords.reserve(static_cast<std::size_t>(grid.num_nodes()) * static_cast<std::size_t>(d * n));
  for (int k = 0; k < grid.num_nodes(); ++k) {
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) {
        coords.push_back({k, i, c});
      }
    }
  }
  return coords;
}

std::vector<CoordSample> sample_coordinates(std::uint64_t seed, std::size_t max_coords,
                                            const TimeGrid& grid, int d, int n) {
  std::vector<CoordSample> coords = all_coordinates(grid, d, n);
  if (coords.size() <= max_coords) return coords;
  // Seeded partial Fisher-Yates; the first max_coords entries form the sample.
  SplitMix64 stream = substream(seed, StreamPurpose::coordinate_subsample, 0);
  for (std::size_t i = 0; i < max_coords; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.next() % (coords.size() - i));
    std::swap(coords[i], coords[j]);
  }
  coords.resize(max_coords);
  return coords;
}

namespace {

double cost_term(const CostBreakdown& cost, CostTerm term) {
  switch (term) {
    case CostTerm::tracking: return cost.tracking;
    case CostTerm::energy: return cost.energy;
    default: return cost.total;
  }
}

}  // namespace

GradientGrid finite_difference_gradient(const ControlProblem& problem, const ControlGrid& u,
                                        double eps, const std::vector<CoordSample>& coords,
                                        CostTerm term) {
  if (!(eps > 0.0)) throw std::invalid_argument("finite_difference_gradient: eps > 0 required");
  const TimeGrid grid = TimeGrid::from_params(problem.params);
  if (u.num_nodes() != grid.num_nodes()) {
    throw std::invalid_argument("finite_difference_gradient: control grid size mismatch");
  }
  GradientGrid g;
  g.values.assign(static_cast<std::size_t>(grid.num_nodes()),
                  Eigen::MatrixXd::Zero(problem.params.d, problem.params.n));

  ControlGrid work = u;
  auto eval = [&](int k, int i, int c, double delta) {
    auto& entry = work.values[static_cast<std::size_t>(k)](c, i);
    const double saved = entry;
    entry = saved + delta;
    const Trajectory traj = integrate_forward(problem.initial, work, problem.params, problem.renorm);
    const double value = cost_term(evaluate_cost(traj, work, problem.params), term);
    entry = saved;
    if (!std::isfinite(value)) {
      throw std::runtime_error("finite_difference_gradient: non-finite cost under perturbation");
    }
    return value;
  };

  for (const auto& s : coords) {
    const double plus = eval(s.node, s.particle, s.component, eps);
    const double minus = eval(s.node, s.particle, s.component, -eps);
    g.values[static_cast<std::size_t>(s.node)](s.component, s.particle) =
        (plus - minus) / (2.0 * eps * grid.weight(s.node) * grid.dt);
  }
  return g;
}

GradientGrid finite_difference_gradient(const ControlProblem& problem, const ControlGrid& u,
                                        double eps, CostTerm term) {
  const TimeGrid grid = TimeGrid::from_params(problem.params);
  return finite_difference_gradient(problem, u, eps,
                                    all_coordinates(grid, problem.params.d, problem.params.n),
                                    term);
}

GradientCheck check_gradient(const ControlProblem& problem, const ControlGrid& u, double eps,
                             std::size_t max_coords, std::uint64_t subsample_seed,
                             bool flip_sign) {
  const TimeGrid grid = TimeGrid::from_params(problem.params);

  const Trajectory traj = integrate_forward(problem.initial, u, problem.params, problem.renorm);
  const AdjointTrajectory adj = integrate_adjoint_backward(traj, u, problem.params);
  GradientGrid adjoint_grad = assemble_gradient(u, traj, adj, problem.params);
  if (flip_sign) {
    for (auto& gk : adjoint_grad.values) gk = -gk;
  }

  GradientCheck result;
  result.coords = sample_coordinates(subsample_seed, max_coords, grid, problem.params.d,
                                     problem.params.n);
  result.coords_compared = result.coords.size();
  const GradientGrid fd = finite_difference_gradient(problem, u, eps, result.coords);

  double diff2 = 0.0;
  double ref2 = 0.0;
  for (const auto& s : result.coords) {
    const double w = grid.weight(s.node) * grid.dt;
    const double a = adjoint_grad.values[static_cast<std::size_t>(s.node)](s.component, s.particle);
    const double f = fd.values[static_cast<std::size_t>(s.node)](s.component, s.particle);
    diff2 += w * (a - f) * (a - f);
    ref2 += w * f * f;
  }
  result.relative_error = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
  result.pass = result.relative_error <= kGradCheckThreshold;
  return result;
}

}  // namespace swarmoc
