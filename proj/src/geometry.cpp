#include "swarmoc/geometry.hpp"

#include "swarmoc/rng.hpp"

namespace swarmoc {

Eigen::MatrixXd tangent_project_columns(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u) {
  if (x.rows() != u.rows() || x.cols() != u.cols()) {
    throw std::invalid_argument("tangent_project_columns: shape mismatch");
  }
  const Eigen::ArrayXd n2 = x.colwise().squaredNorm().transpose();
  if (!(n2 > kDegenerateNorm * kDegenerateNorm).all()) {
    throw std::invalid_argument("tangent_project_columns: degenerate base point (|x| < 1e-8)");
  }
  const Eigen::ArrayXd scale = (x.array() * u.array()).colwise().sum().transpose() / n2;
  return u - x * scale.matrix().asDiagonal();
}

Eigen::VectorXd renormalize(const Eigen::VectorXd& x) {
  const double n = x.norm();
  if (!(n > kRenormFloor)) {
    throw std::invalid_argument("renormalize: |x| <= 1/2, trajectory left the sphere region");
  }
  return x / n;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> renormalize(const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd& v) {
  Eigen::VectorXd xn = renormalize(x);
  return {xn, tangent_project(xn, v)};
}

void renormalize_columns(Eigen::MatrixXd& x) {
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const double n = x.col(i).norm();
    if (!(n > kRenormFloor)) {
      throw std::invalid_argument("renormalize: |x| <= 1/2, trajectory left the sphere region");
    }
    x.col(i) /= n;
  }
}

void renormalize_columns(Eigen::MatrixXd& x, Eigen::MatrixXd& v) {
  renormalize_columns(x);
  v = tangent_project_columns(x, v);
}

namespace {

void fill_gaussian(SplitMix64& stream, Eigen::Ref<Eigen::VectorXd> out) {
  Eigen::Index i = 0;
  while (i < out.size()) {
    const auto [a, b] = stream.next_gaussian_pair();
    out[i++] = a;
    if (i < out.size()) out[i++] = b;
  }
}

}  // namespace

Eigen::MatrixXd sample_sphere(std::uint64_t seed, int n, int d) {
  if (n < 1) throw std::invalid_argument("sample_sphere: N >= 1 required");
  if (d < 2) throw std::invalid_argument("sample_sphere: d >= 2 required");
  Eigen::MatrixXd x(d, n);
  for (int i = 0; i < n; ++i) {
    SplitMix64 stream = substream(seed, StreamPurpose::sphere_points, static_cast<std::uint64_t>(i));
    double norm = 0.0;
    do {
      fill_gaussian(stream, x.col(i));
      norm = x.col(i).norm();
    } while (norm < 1e-12);
    x.col(i) /= norm;
  }
  return x;
}

Eigen::VectorXd sample_tangent(std::uint64_t seed, const Eigen::VectorXd& x, double scale,
                               std::uint64_t index) {
  if (scale < 0.0) throw std::invalid_argument("sample_tangent: scale >= 0 required");
  if (scale == 0.0) return Eigen::VectorXd::Zero(x.size());
  SplitMix64 stream = substream(seed, StreamPurpose::tangent_vectors, index);
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd t(x.size());
  double norm = 0.0;
  do {
    fill_gaussian(stream, g);
    t = tangent_project(x, g);
    norm = t.norm();
  } while (norm < 1e-12);
  return (scale / norm) * t;
}

Eigen::MatrixXd sample_tangent_set(std::uint64_t seed, const Eigen::MatrixXd& x, double scale) {
  Eigen::MatrixXd v(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    v.col(i) = sample_tangent(seed, x.col(i), scale, static_cast<std::uint64_t>(i));
  }
  return v;
}

}  // namespace swarmoc
