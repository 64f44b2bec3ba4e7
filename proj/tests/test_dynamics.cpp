#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "swarmoc/dynamics.hpp"
#include "swarmoc/errors.hpp"
#include "swarmoc/geometry.hpp"
#include "swarmoc/rng.hpp"

using namespace swarmoc;

namespace {

ModelParams basic(int n, int d, double kappa = 0.5) {
  ModelParams p;
  p.n = n;
  p.d = d;
  p.kappa = kappa;
  p.m = 1.0;
  p.gamma = 1.0;
  p.lambda = 0.1;
  p.t_final = 1.0;
  p.dt = 0.01;
  return p;
}

Eigen::MatrixXd random_points(std::uint64_t seed, int n, int d) {
  return sample_sphere(seed, n, d);
}

Eigen::MatrixXd random_matrix(std::uint64_t seed, int d, int n) {
  SplitMix64 stream(seed);
  Eigen::MatrixXd out(d, n);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) out(c, i) = stream.next_gaussian_pair().first;
  }
  return out;
}

}  // namespace

TEST_CASE("first_order_rhs: consensus and antipodal fixed points") {
  const ModelParams p = basic(3, 3, 1.0);
  Eigen::MatrixXd x(3, 3);
  x.colwise() = Eigen::Vector3d::Unit(0);
  const Eigen::MatrixXd u = Eigen::MatrixXd::Zero(3, 3);
  CHECK(first_order_rhs(x, u, p).cwiseAbs().maxCoeff() <= 1e-15);

  ModelParams p2 = basic(2, 2, 1.0);
  Eigen::MatrixXd anti(2, 2);
  anti << 1.0, -1.0, 0.0, 0.0;
  CHECK(first_order_rhs(anti, Eigen::MatrixXd::Zero(2, 2), p2).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("first_order_rhs: orthogonal pair pulls at kappa/2") {
  const ModelParams p = basic(2, 2, 1.0);
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 0.0, 0.0, 1.0;
  const Eigen::MatrixXd dx = first_order_rhs(x, Eigen::MatrixXd::Zero(2, 2), p);
  CHECK(dx.col(0).isApprox(Eigen::Vector2d{0.0, 0.5}));
  CHECK(dx.col(1).isApprox(Eigen::Vector2d{0.5, 0.0}));
}

TEST_CASE("first_order_rhs: skew frequencies keep the drift tangent") {
  ModelParams p = basic(4, 3, 0.7);
  Eigen::Matrix3d w;
  w << 0, 1, -2, -1, 0, 0.5, 2, -0.5, 0;
  p.omega.assign(4, w);
  const Eigen::MatrixXd x = random_points(9, 4, 3);
  const Eigen::MatrixXd u = random_matrix(10, 3, 4);
  const Eigen::MatrixXd dx = first_order_rhs(x, u, p);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(dx.col(i).dot(x.col(i))) <= 1e-13);
  }
}

TEST_CASE("second_order_rhs: rest consensus, centripetal term, radial control") {
  ModelParams p = basic(3, 3);
  Eigen::MatrixXd x(3, 3);
  x.colwise() = Eigen::Vector3d::Unit(1);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  const auto [dx0, dv0] = second_order_rhs(x, zero, zero, p);
  CHECK(dx0.cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(dv0.cwiseAbs().maxCoeff() <= 1e-15);

  SUBCASE("single particle circle: vdot = -x - v at unit speed") {
    ModelParams p1 = basic(1, 2, 3.0);
    Eigen::MatrixXd x1(2, 1), v1(2, 1);
    x1 << 1.0, 0.0;
    v1 << 0.0, 1.0;
    const auto [dx, dv] = second_order_rhs(x1, v1, Eigen::MatrixXd::Zero(2, 1), p1);
    CHECK(dx.isApprox(v1));
    CHECK(dv.col(0).isApprox(Eigen::Vector2d{-1.0, -1.0}));
  }

  SUBCASE("radial control is projected out") {
    ModelParams p1 = basic(1, 3);
    Eigen::MatrixXd x1 = Eigen::Vector3d::Unit(0);
    Eigen::MatrixXd v1 = 0.3 * Eigen::Vector3d::Unit(2);
    const auto [dx_a, dv_a] = second_order_rhs(x1, v1, Eigen::MatrixXd::Zero(3, 1), p1);
    const auto [dx_b, dv_b] = second_order_rhs(x1, v1, Eigen::MatrixXd(5.0 * x1), p1);
    CHECK(dx_a == dx_b);
    CHECK((dv_a - dv_b).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("second_order_rhs: centripetal balance <vdot, x> = -|v|^2") {
  const ModelParams p = basic(5, 3, 0.8);
  const Eigen::MatrixXd x = random_points(21, 5, 3);
  const Eigen::MatrixXd v = tangent_project_columns(x, random_matrix(22, 3, 5));
  const Eigen::MatrixXd u = random_matrix(23, 3, 5);
  const auto [dx, dv] = second_order_rhs(x, v, u, p);
  for (int i = 0; i < 5; ++i) {
    CHECK(dv.col(i).dot(x.col(i)) ==
          doctest::Approx(-v.col(i).squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("rhs tangency holds for random unit states") {
  const ModelParams p = basic(6, 4, 1.3);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Eigen::MatrixXd x = random_points(100 + s, 6, 4);
    const Eigen::MatrixXd u = random_matrix(200 + s, 4, 6);
    const Eigen::MatrixXd dx = first_order_rhs(x, u, p);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(dx.col(i).dot(x.col(i))) <= 1e-13);
    }
  }
}

TEST_CASE("rhs is permutation-equivariant and affine in u") {
  const ModelParams p = basic(4, 3, 0.9);
  const Eigen::MatrixXd x = random_points(31, 4, 3);
  const Eigen::MatrixXd u = random_matrix(32, 3, 4);

  SUBCASE("permutation") {
    std::vector<int> perm{2, 0, 3, 1};
    Eigen::MatrixXd xp(3, 4), up(3, 4);
    for (int i = 0; i < 4; ++i) {
      xp.col(i) = x.col(perm[static_cast<std::size_t>(i)]);
      up.col(i) = u.col(perm[static_cast<std::size_t>(i)]);
    }
    const Eigen::MatrixXd dx = first_order_rhs(x, u, p);
    const Eigen::MatrixXd dxp = first_order_rhs(xp, up, p);
    for (int i = 0; i < 4; ++i) {
      CHECK((dxp.col(i) - dx.col(perm[static_cast<std::size_t>(i)])).cwiseAbs().maxCoeff() <=
            1e-14);
    }
  }

  SUBCASE("control slope is the tangent projection") {
    const Eigen::MatrixXd base = first_order_rhs(x, Eigen::MatrixXd::Zero(3, 4), p);
    const Eigen::MatrixXd with_u = first_order_rhs(x, u, p);
    CHECK((with_u - base - tangent_project_columns(x, u)).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("adjoint rhs: consensus annihilates the source") {
  const ModelParams p = basic(3, 3);
  Eigen::MatrixXd x(3, 3);
  x.colwise() = Eigen::Vector3d::Unit(0);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);

  CHECK(first_order_adjoint_rhs(zero, x, zero, p).cwiseAbs().maxCoeff() <= 1e-15);

  const auto [mp, mq] = second_order_adjoint_rhs(zero, zero, x, zero, zero, p);
  CHECK(mp.cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(mq.cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("adjoint rhs: zero costate leaves only the cost source") {
  const ModelParams p = basic(4, 3, 1.1);
  const Eigen::MatrixXd x = random_points(41, 4, 3);
  const Eigen::MatrixXd u = random_matrix(42, 3, 4);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 4);

  const Eigen::MatrixXd got = first_order_adjoint_rhs(zero, x, u, p);
  const Eigen::MatrixXd source =
      (2.0 / 4.0) * (x.colwise() - Eigen::VectorXd(x.rowwise().mean()));
  CHECK((got - source).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("second-order adjoint: -dq/dt = p when q = 0") {
  const ModelParams p = basic(3, 3, 0.6);
  const Eigen::MatrixXd x = random_points(51, 3, 3);
  const Eigen::MatrixXd v = tangent_project_columns(x, random_matrix(52, 3, 3));
  const Eigen::MatrixXd u = random_matrix(53, 3, 3);
  const Eigen::MatrixXd pc = random_matrix(54, 3, 3);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);

  const auto [mp, mq] = second_order_adjoint_rhs(pc, zero, x, v, u, p);
  CHECK(mq == pc);
}

TEST_CASE("adjoint rhs is linear in the costate around the fixed source") {
  const ModelParams p = basic(4, 3, 0.8);
  const Eigen::MatrixXd x = random_points(61, 4, 3);
  const Eigen::MatrixXd u = random_matrix(62, 3, 4);
  const Eigen::MatrixXd a = random_matrix(63, 3, 4);
  const Eigen::MatrixXd b = random_matrix(64, 3, 4);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 4);

  const Eigen::MatrixXd source = first_order_adjoint_rhs(zero, x, u, p);
  const Eigen::MatrixXd fa = first_order_adjoint_rhs(a, x, u, p) - source;
  const Eigen::MatrixXd fb = first_order_adjoint_rhs(b, x, u, p) - source;
  const Eigen::MatrixXd fab =
      first_order_adjoint_rhs(2.0 * a + 3.0 * b, x, u, p) - source;
  CHECK((fab - 2.0 * fa - 3.0 * fb).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("ModelParams validation catches bad fields") {
  ModelParams p = basic(3, 3);
  p.validate();

  SUBCASE("grid alignment") {
    p.dt = 0.3;  // T/dt = 3.33...
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.dt = 0.25;
    p.validate();
    CHECK(p.num_steps() == 4);
  }

  SUBCASE("scalar ranges") {
    p.lambda = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = basic(3, 3);
    p.m = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = basic(3, 3);
    p.dt = 2.0;  // > T
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }

  SUBCASE("natural frequencies must be skew and one per particle") {
    p.omega.assign(2, Eigen::Matrix3d::Zero());  // wrong count
    CHECK_THROWS_AS(p.validate(), ConfigError);

    p.omega.assign(3, Eigen::Matrix3d::Zero());
    p.omega[1](0, 1) = 1.0;  // not skew
    CHECK_THROWS_AS(p.validate(), ConfigError);

    p.omega[1](1, 0) = -1.0;  // now skew
    p.validate();
    CHECK(p.has_omega());

    p.omega.assign(3, Eigen::MatrixXd::Zero(2, 2));  // wrong size
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }
}

TEST_CASE("dynamics input validation") {
  const ModelParams p = basic(3, 3);
  const Eigen::MatrixXd x = random_points(71, 3, 3);

  CHECK_THROWS_AS(first_order_rhs(x, Eigen::MatrixXd::Zero(3, 2), p), std::invalid_argument);

  Eigen::MatrixXd bad = x;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(first_order_rhs(bad, Eigen::MatrixXd::Zero(3, 3), p), std::invalid_argument);

  ModelParams nonzero_omega = p;
  nonzero_omega.omega.assign(3, Eigen::Matrix3d{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  const Eigen::MatrixXd v = tangent_project_columns(x, random_matrix(72, 3, 3));
  CHECK_THROWS_AS(second_order_rhs(x, v, Eigen::MatrixXd::Zero(3, 3), nonzero_omega),
                  std::invalid_argument);
}
