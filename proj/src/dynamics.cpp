#include "swarmoc/dynamics.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

#include "swarmoc/geometry.hpp"

namespace swarmoc {

namespace {

void check_inputs(const ModelParams& params, std::initializer_list<const Eigen::MatrixXd*> mats) {
  for (const auto* m : mats) {
    if (m->rows() != params.d || m->cols() != params.n) {
      throw std::invalid_argument("dynamics: expected " + std::to_string(params.d) + "x" +
                                  std::to_string(params.n) + " input, got " +
                                  std::to_string(m->rows()) + "x" + std::to_string(m->cols()));
    }
    if (!m->allFinite()) {
      throw std::invalid_argument("dynamics: non-finite input entries");
    }
  }
}

// <a_i, b_i> per column, as a 1 x N array.
Eigen::Array<double, 1, Eigen::Dynamic> col_dots(const Eigen::MatrixXd& a,
                                                 const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).colwise().sum();
}

}  // namespace

Eigen::MatrixXd first_order_rhs(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u,
                                const ModelParams& params) {
  check_inputs(params, {&x, &u});
  const Eigen::VectorXd xbar = x.rowwise().mean();
  const auto xi_xbar = col_dots(x, xbar.replicate(1, x.cols()));
  Eigen::MatrixXd dx = params.kappa * (xbar.replicate(1, x.cols()) -
                                       x * xi_xbar.matrix().asDiagonal());
  dx += tangent_project_columns(x, u);
  if (!params.omega.empty()) {
    for (int i = 0; i < params.n; ++i) {
      dx.col(i) += params.omega[static_cast<std::size_t>(i)] * x.col(i);
    }
  }
  return dx;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> second_order_rhs(const Eigen::MatrixXd& x,
                                                             const Eigen::MatrixXd& v,
                                                             const Eigen::MatrixXd& u,
                                                             const ModelParams& params) {
  check_inputs(params, {&x, &v, &u});
  if (params.has_omega()) {
    throw std::invalid_argument("second_order_rhs: natural frequencies are not supported");
  }
  const Eigen::VectorXd xbar = x.rowwise().mean();
  const Eigen::MatrixXd xbar_rep = xbar.replicate(1, x.cols());
  const auto nx2 = col_dots(x, x);
  const auto xi_xbar = col_dots(x, xbar_rep);
  const auto vv = col_dots(v, v);

  Eigen::MatrixXd dv = -x * (vv / nx2).matrix().asDiagonal();
  dv -= (params.gamma / params.m) * v;
  dv += (params.kappa / params.m) *
        (xbar_rep - x * (xi_xbar / nx2).matrix().asDiagonal());
  dv += tangent_project_columns(x, u);
  return {v, dv};
}

Eigen::MatrixXd first_order_adjoint_rhs(const Eigen::MatrixXd& p, const Eigen::MatrixXd& x,
                                        const Eigen::MatrixXd& u, const ModelParams& params) {
  check_inputs(params, {&p, &x, &u});
  const double n = static_cast<double>(params.n);
  const Eigen::VectorXd xbar = x.rowwise().mean();
  const Eigen::MatrixXd xbar_rep = xbar.replicate(1, x.cols());
  const auto xp = col_dots(x, p);
  const auto xi_xbar = col_dots(x, xbar_rep);
  const auto ux = col_dots(u, x);

  // (kappa/N) sum_j (p_j - <x_j,p_j> x_j): one shared vector for all columns.
  const Eigen::VectorXd coupling =
      (params.kappa / n) * (p - x * xp.matrix().asDiagonal()).rowwise().sum();

  Eigen::MatrixXd out = coupling.replicate(1, x.cols());
  out -= params.kappa * xbar * xp.matrix();
  out -= params.kappa * p * xi_xbar.matrix().asDiagonal();
  out -= u * xp.matrix().asDiagonal();
  out -= p * ux.matrix().asDiagonal();
  out += 2.0 * x * (ux * xp).matrix().asDiagonal();
  out += (2.0 / n) * (x - xbar_rep);
  return out;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> second_order_adjoint_rhs(
    const Eigen::MatrixXd& p, const Eigen::MatrixXd& q, const Eigen::MatrixXd& x,
    const Eigen::MatrixXd& v, const Eigen::MatrixXd& u, const ModelParams& params) {
  check_inputs(params, {&p, &q, &x, &v, &u});
  const double n = static_cast<double>(params.n);
  const double km = params.kappa / params.m;
  const Eigen::VectorXd xbar = x.rowwise().mean();
  const Eigen::MatrixXd xbar_rep = xbar.replicate(1, x.cols());
  const auto xq = col_dots(x, q);
  const auto xi_xbar = col_dots(x, xbar_rep);
  const auto ux = col_dots(u, x);
  const auto vv = col_dots(v, v);

  const Eigen::VectorXd coupling =
      (km / n) * (q - x * xq.matrix().asDiagonal()).rowwise().sum();

  Eigen::MatrixXd mp = -q * vv.matrix().asDiagonal();
  mp += 2.0 * x * (vv * xq).matrix().asDiagonal();
  mp += coupling.replicate(1, x.cols());
  mp -= km * xbar * xq.matrix();
  mp -= km * q * xi_xbar.matrix().asDiagonal();
  mp += 2.0 * km * x * (xi_xbar * xq).matrix().asDiagonal();
  mp -= u * xq.matrix().asDiagonal();
  mp -= q * ux.matrix().asDiagonal();
  mp += 2.0 * x * (ux * xq).matrix().asDiagonal();
  mp += (2.0 / n) * (x - xbar_rep);

  Eigen::MatrixXd mq = p - 2.0 * v * xq.matrix().asDiagonal() - (params.gamma / params.m) * q;
  return {mp, mq};
}

}  // namespace swarmoc
