#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace swarmoc {

/// Base-point norms below this are rejected as degenerate.
inline constexpr double kDegenerateNorm = 1e-8;

/// Norms at or below 1/2 signal the trajectory left the sphere's
/// neighbourhood; renormalize() refuses to mask that.
inline constexpr double kRenormFloor = 0.5;

/// Removes the radial component of u at base point x:
///   u - (<u,x>/|x|^2) x.
/// The division is evaluated literally, so the result is exactly orthogonal
/// to x even when |x| has drifted off 1. Throws for |x| < 1e-8.
template <typename XDerived, typename UDerived>
Eigen::Matrix<typename XDerived::Scalar, XDerived::RowsAtCompileTime, 1> tangent_project(
    const Eigen::MatrixBase<XDerived>& x, const Eigen::MatrixBase<UDerived>& u) {
  const auto n2 = x.squaredNorm();
  if (!(n2 > kDegenerateNorm * kDegenerateNorm)) {
    throw std::invalid_argument("tangent_project: degenerate base point (|x| < 1e-8)");
  }
  return u - (u.dot(x) / n2) * x;
}

/// Columnwise tangent projection for a d x N bundle of base points.
Eigen::MatrixXd tangent_project_columns(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u);

/// x / |x|; throws when |x| <= 1/2.
Eigen::VectorXd renormalize(const Eigen::VectorXd& x);

/// (x/|x|, v projected tangent to x/|x|); throws when |x| <= 1/2.
std::pair<Eigen::VectorXd, Eigen::VectorXd> renormalize(const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd& v);

/// Columnwise renormalization of positions (and optional velocities) in place.
void renormalize_columns(Eigen::MatrixXd& x);
void renormalize_columns(Eigen::MatrixXd& x, Eigen::MatrixXd& v);

/// N points on S^{d-1}, one per column. Column i is drawn from sub-stream
/// (seed, sphere_points, i): d Gaussians, renormalized exactly. A zero draw
/// (norm < 1e-12) is re-drawn from the same stream; that is the only
/// data-dependent branch.
Eigen::MatrixXd sample_sphere(std::uint64_t seed, int n, int d);

/// One tangent vector at unit-norm x with |result| = scale, drawn from
/// sub-stream (seed, tangent_vectors, index). scale = 0 returns zeros.
Eigen::VectorXd sample_tangent(std::uint64_t seed, const Eigen::VectorXd& x, double scale,
                               std::uint64_t index = 0);

/// Columnwise sample_tangent; column i uses sub-stream index i, so the result
/// does not collide with sample_sphere streams under the same seed.
Eigen::MatrixXd sample_tangent_set(std::uint64_t seed, const Eigen::MatrixXd& x, double scale);

}  // namespace swarmoc
