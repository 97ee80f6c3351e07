#include <doctest.h>

#include <cmath>

#include "acsel/errors.hpp"
#include "acsel/geometry.hpp"
#include "acsel/rng.hpp"

using namespace acsel;

namespace {

Dataset random_dataset(int n, int p, std::uint64_t seed) {
  RngStream rng(seed);
  Dataset d;
  d.x.resize(n, p);
  d.y.resize(n);
  for (int j = 0; j < p; ++j) {
    d.names.push_back("x" + std::to_string(j + 1));
  }
  Eigen::VectorXd col(n);
  for (int j = 0; j < p; ++j) {
    rng.fill_normals(col);
    d.x.col(j) = col;
  }
  rng.fill_normals(d.y);
  return d;
}

}  // namespace

TEST_CASE("standardize centers and normalizes a simple column") {
  Dataset d;
  d.x.resize(3, 1);
  d.x << 1, 2, 3;
  d.y.resize(3);
  d.y << 1, 0, -1;
  d.names = {"a"};

  const StandardizedDesign sd = standardize(d);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(sd.xs(0, 0) == doctest::Approx(-s).epsilon(1e-12));
  CHECK(sd.xs(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sd.xs(2, 0) == doctest::Approx(s).epsilon(1e-12));
  CHECK(sd.col_means[0] == doctest::Approx(2.0));
  CHECK(sd.ys.sum() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("standardize is idempotent") {
  const Dataset d = random_dataset(10, 10, 7);
  const StandardizedDesign once = standardize(d);
  Dataset again;
  again.x = once.xs;
  again.y = once.ys;
  again.names = once.names;
  const StandardizedDesign twice = standardize(again);
  CHECK((twice.xs - once.xs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("standardize output columns have zero mean and unit norm") {
  const StandardizedDesign sd = standardize(random_dataset(10, 10, 11));
  for (int j = 0; j < 10; ++j) {
    CHECK(std::abs(sd.xs.col(j).mean()) < 1e-10);
    CHECK(std::abs(sd.xs.col(j).norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("standardize rejects bad input") {
  Dataset constant;
  constant.x = Eigen::MatrixXd::Ones(5, 2);
  constant.x.col(0) = Eigen::VectorXd::LinSpaced(5, 0, 1);
  constant.y = Eigen::VectorXd::Zero(5);
  constant.names = {"a", "b"};
  CHECK_THROWS_AS(standardize(constant), ConstantColumnError);

  Dataset tiny;
  tiny.x = Eigen::MatrixXd::Random(2, 2);
  tiny.y = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(standardize(tiny), TooFewRowsError);
}

TEST_CASE("basis_h at N=3 matches the closed form") {
  const Eigen::MatrixXd h = basis_h(3);
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  CHECK(h(0, 0) == doctest::Approx(1 / r2).epsilon(1e-14));
  CHECK(h(1, 0) == doctest::Approx(-1 / r2).epsilon(1e-14));
  CHECK(h(2, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h(0, 1) == doctest::Approx(1 / r6).epsilon(1e-14));
  CHECK(h(1, 1) == doctest::Approx(1 / r6).epsilon(1e-14));
  CHECK(h(2, 1) == doctest::Approx(-2 / r6).epsilon(1e-14));
}

TEST_CASE("basis_h is orthonormal and orthogonal to the ones vector") {
  for (int n : {3, 7, 25, 100}) {
    const Eigen::MatrixXd h = basis_h(n);
    const Eigen::VectorXd against_ones = h.transpose() * Eigen::VectorXd::Ones(n);
    CHECK(against_ones.cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd gram = h.transpose() * h;
    CHECK((gram - Eigen::MatrixXd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("phi_forward maps basis columns to canonical vectors") {
  const Eigen::MatrixXd h = basis_h(6);
  const Eigen::VectorXd w = phi_forward(h.col(0));
  CHECK(std::abs(w[0] - 1.0) < 1e-12);
  CHECK(w.tail(4).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("phi_forward agrees with the dense basis product") {
  RngStream rng(3);
  for (int n : {3, 9, 40}) {
    const Eigen::MatrixXd h = basis_h(n);
    Eigen::VectorXd v(n);
    rng.fill_normals(v);
    v.array() -= v.mean();
    const Eigen::VectorXd fast = phi_forward(v);
    const Eigen::VectorXd dense = h.transpose() * v;
    CHECK((fast - dense).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd back_fast = phi_inverse(fast);
    const Eigen::VectorXd back_dense = h * fast;
    CHECK((back_fast - back_dense).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("phi_forward is an isometry and round-trips") {
  RngStream rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + rng.uniform_int(30);
    Eigen::VectorXd v(n);
    rng.fill_normals(v);
    v.array() -= v.mean();
    const Eigen::VectorXd w = phi_forward(v);
    CHECK(std::abs(w.norm() - v.norm()) < 1e-10);
    CHECK((phi_inverse(w) - v).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("phi_forward rejects non-centered input") {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(5);
  CHECK_THROWS_AS(phi_forward(v), NotInHyperplaneError);
}

TEST_CASE("phi_inverse maps e1 to h1 and outputs centered unit vectors") {
  const Eigen::MatrixXd h = basis_h(5);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
  e1[0] = 1.0;
  CHECK((phi_inverse(e1) - h.col(0)).cwiseAbs().maxCoeff() < 1e-12);

  RngStream rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd w = rng.unit_sphere(4 + rng.uniform_int(20));
    const Eigen::VectorXd u = phi_inverse(w);
    CHECK(std::abs(u.sum()) < 1e-10);
    CHECK(std::abs(u.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("embed_columns puts every column on the unit sphere") {
  const StandardizedDesign sd = standardize(random_dataset(10, 10, 23));
  const SphereEmbedding emb = embed_columns(sd);
  CHECK(emb.z.rows() == 9);
  CHECK(emb.z.cols() == 10);
  for (int j = 0; j < 10; ++j) {
    CHECK(std::abs(emb.z.col(j).norm() - 1.0) < 1e-10);
    CHECK((phi_inverse(emb.z.col(j)) - sd.xs.col(j)).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("embed_columns handles the smallest case") {
  Dataset d;
  d.x.resize(3, 1);
  d.x << 1, 2, 3;
  d.y = Eigen::VectorXd::Zero(3);
  d.names = {"a"};
  const SphereEmbedding emb = embed_columns(standardize(d));
  CHECK(emb.z.rows() == 2);
  CHECK(std::abs(emb.z.col(0).norm() - 1.0) < 1e-12);
}
