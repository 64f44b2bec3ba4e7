#include "swarmoc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmoc {

ControlGrid ControlGrid::zero(const TimeGrid& grid, int d, int n) {
  ControlGrid u;
  u.values.assign(static_cast<std::size_t>(grid.num_nodes()), Eigen::MatrixXd::Zero(d, n));
  return u;
}

bool ControlGrid::same_shape(const ControlGrid& other) const {
  if (values.size() != other.values.size()) return false;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k].rows() != other.values[k].rows() || values[k].cols() != other.values[k].cols()) {
      return false;
    }
  }
  return true;
}

bool ControlGrid::all_finite() const {
  for (const auto& u : values) {
    if (!u.allFinite()) return false;
  }
  return true;
}

double weighted_dot(const ControlGrid& a, const ControlGrid& b, const TimeGrid& grid) {
  if (a.num_nodes() != grid.num_nodes() || !a.same_shape(b)) {
    throw std::invalid_argument("weighted_dot: grid shape mismatch");
  }
  double acc = 0.0;
  for (int k = 0; k < a.num_nodes(); ++k) {
    acc += grid.weight(k) * grid.dt *
           (a.values[static_cast<std::size_t>(k)].array() *
            b.values[static_cast<std::size_t>(k)].array())
               .sum();
  }
  return acc;
}

double weighted_norm(const ControlGrid& a, const TimeGrid& grid) {
  return std::sqrt(weighted_dot(a, a, grid));
}

}  // namespace swarmoc
