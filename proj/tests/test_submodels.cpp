#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "certreg/rng.hpp"
#include "certreg/submodels.hpp"

using namespace certreg;

namespace {

Eigen::MatrixXd random_matrix(SplitMix64& rng, Eigen::Index n, Eigen::Index d) {
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rng.next_in(-2.0, 2.0);
  return x;
}

// Full-batch gradient descent on the ridge objective, run to convergence.
// Slow but independent of the direct solver.
RidgeModel ridge_by_gradient_descent(const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& y, double lambda) {
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;

  Eigen::VectorXd w = Eigen::VectorXd::Zero(x.cols());
  const Eigen::MatrixXd gram = xc.transpose() * xc;
  const Eigen::VectorXd rhs = xc.transpose() * yc;
  const double step = 0.9 / (gram.operatorNorm() + lambda);
  for (int iter = 0; iter < 200000; ++iter) {
    const Eigen::VectorXd grad = gram * w + lambda * w - rhs;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-10) break;
    w -= step * grad;
  }
  RidgeModel model;
  model.weights = w;
  model.intercept = y_mean - w.dot(x_mean.transpose());
  model.lambda = lambda;
  return model;
}

}  // namespace

TEST_CASE("ridge interpolates two points without regularization") {
  Eigen::MatrixXd x(2, 1);
  x << 0, 1;
  Eigen::VectorXd y(2);
  y << 0, 1;
  const RidgeModel model = train_ridge(x, y, 0.0);
  CHECK(model.weights(0) == doctest::Approx(1.0));
  CHECK(model.intercept == doctest::Approx(0.0));
  CHECK(predict(model, Eigen::VectorXd::Constant(1, 2.0)) == doctest::Approx(2.0));
}

TEST_CASE("huge regularization shrinks to the target mean") {
  Eigen::MatrixXd x(2, 1);
  x << 0, 1;
  Eigen::VectorXd y(2);
  y << 0, 1;
  const RidgeModel model = train_ridge(x, y, 1e12);
  CHECK(std::abs(model.weights(0)) < 1e-9);
  CHECK(model.intercept == doctest::Approx(0.5));
}

TEST_CASE("direct solve matches gradient descent run to convergence") {
  SplitMix64 rng(41);
  const Eigen::MatrixXd x = random_matrix(rng, 20, 5);
  Eigen::VectorXd y(20);
  for (Eigen::Index i = 0; i < 20; ++i) y(i) = rng.next_in(-3.0, 3.0);

  const RidgeModel direct = train_ridge(x, y, 0.1);
  const RidgeModel iterative = ridge_by_gradient_descent(x, y, 0.1);
  CHECK((direct.weights - iterative.weights).lpNorm<Eigen::Infinity>() < 1e-4);
  CHECK(std::abs(direct.intercept - iterative.intercept) < 1e-4);
}

TEST_CASE("fitting is deterministic") {
  SplitMix64 rng(42);
  const Eigen::MatrixXd x = random_matrix(rng, 30, 4);
  Eigen::VectorXd y(30);
  for (Eigen::Index i = 0; i < 30; ++i) y(i) = rng.next_in(-3.0, 3.0);

  const RidgeModel a = train_ridge(x, y, 0.05);
  const RidgeModel b = train_ridge(x, y, 0.05);
  for (int probe = 0; probe < 8; ++probe) {
    Eigen::VectorXd q(4);
    for (Eigen::Index j = 0; j < 4; ++j) q(j) = rng.next_in(-2.0, 2.0);
    CHECK(predict(a, q) == predict(b, q));
  }
}

TEST_CASE("row order does not change the fitted model") {
  SplitMix64 rng(43);
  const Eigen::MatrixXd x = random_matrix(rng, 25, 3);
  Eigen::VectorXd y(25);
  for (Eigen::Index i = 0; i < 25; ++i) y(i) = rng.next_in(-3.0, 3.0);

  std::vector<Eigen::Index> order(25);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 shuffle_rng(44);
  std::vector<std::size_t> perm(order.begin(), order.end());
  shuffle_rng.shuffle(perm);
  Eigen::MatrixXd xp(25, 3);
  Eigen::VectorXd yp(25);
  for (Eigen::Index i = 0; i < 25; ++i) {
    xp.row(i) = x.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));
    yp(i) = y(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));
  }

  const RidgeModel a = train_ridge(x, y, 0.2);
  const RidgeModel b = train_ridge(xp, yp, 0.2);
  CHECK((a.weights - b.weights).lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK(std::abs(a.intercept - b.intercept) < 1e-9);
}

TEST_CASE("singular systems are rejected") {
  Eigen::MatrixXd x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  Eigen::VectorXd y(2);
  y << 1, 2;
  CHECK_THROWS_AS(train_ridge(x, y, 0.0), std::invalid_argument);  // d >= n

  Eigen::MatrixXd dup(4, 2);
  dup << 1, 1, 2, 2, 3, 3, 4, 4;  // identical columns
  Eigen::VectorXd yd(4);
  yd << 1, 2, 1, 2;
  CHECK_THROWS(train_ridge(dup, yd, 0.0));
  CHECK_NOTHROW(train_ridge(dup, yd, 1e-3));
}

TEST_CASE("prediction interface") {
  CHECK(predict(Submodel{ConstantModel{4.0}}, Eigen::VectorXd::Zero(3)) == 4.0);
  RidgeModel unit;
  unit.weights = Eigen::VectorXd::Constant(1, 1.0);
  unit.intercept = 0.0;
  CHECK(predict(unit, Eigen::VectorXd::Constant(1, 2.0)) == 2.0);
  CHECK_THROWS_AS(predict(unit, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}
