#include <doctest.h>

#include <cmath>
#include <random>

#include "specgrad/numkit.hpp"

using namespace specgrad;

TEST_CASE("dot, norms and axpy") {
  CHECK(dot({1, 2}, {3, 4}) == 11.0);
  CHECK(dot({0.5, -0.5}, {0.5, -0.5}) == 0.5);
  CHECK(dot({1, 0, 0}, {0, 1, 0}) == 0.0);
  CHECK(norm_inf({1, -3, 2}) == 3.0);
  CHECK(norm2({3, 4}) == 5.0);
  CHECK(axpy(2, {1, 1}, {0, -1}) == DenseVector{2, 1});
  CHECK(scale(-1, {1, 2}) == DenseVector{-1, -2});
  CHECK(subtract({3, 2}, {1, 1}) == DenseVector{2, 1});

  DenseVector v{1, 1};
  add_scaled(v, 0.5, {2, -2});
  CHECK(v == DenseVector{2, 0});
}

TEST_CASE("length mismatch throws") {
  CHECK_THROWS_AS(dot({1, 2}, {1}), DimensionError);
  CHECK_THROWS_AS(axpy(1, {1}, {1, 2}), DimensionError);
  DenseVector v{1};
  CHECK_THROWS_AS(add_scaled(v, 1, {1, 2}), DimensionError);
}

TEST_CASE("dot symmetry and norm identity on random vectors") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    DenseVector u(37), v(37);
    for (std::size_t i = 0; i < 37; ++i) {
      u[i] = normal(rng);
      v[i] = normal(rng);
    }
    CHECK(dot(u, v) == dot(v, u));
    const double n = norm2(u);
    CHECK(std::abs(n * n - dot(u, u)) <= 8 * 2.2e-16 * dot(u, u));
  }
}

TEST_CASE("finite-difference gradient") {
  const ScalarField square = [](const DenseVector& x) { return x[0] * x[0]; };
  const ScalarField cube = [](const DenseVector& x) { return x[0] * x[0] * x[0]; };
  const ScalarField flat = [](const DenseVector&) { return 4.0; };

  CHECK(std::abs(fd_gradient(square, {1.0}, {1e-5})[0] - 2.0) <= 1e-8);
  CHECK(std::abs(fd_gradient(cube, {1.0}, {1e-4})[0] - 3.0) <= 1e-6);
  const DenseVector zero = fd_gradient(flat, {0.3, -2.0, 7.0}, {1e-6});
  for (double z : zero) CHECK(z == 0.0);

  CHECK(FiniteDifferenceSpec::scaled({0.5, -3.0}).step == doctest::Approx(4e-6));
}

TEST_CASE("finite-difference Hessian action") {
  const ScalarField square = [](const DenseVector& x) { return x[0] * x[0]; };
  const ScalarField cube = [](const DenseVector& x) { return x[0] * x[0] * x[0]; };
  const ScalarField linear = [](const DenseVector& x) { return 3.0 * x[0] - 2.0 * x[1]; };

  CHECK(std::abs(fd_hessian_action(square, {0.0}, {1.0}, {1e-4}) - 2.0) <= 1e-6);
  CHECK(std::abs(fd_hessian_action(cube, {1.0}, {0.5}, {1e-4}) - 1.5) <= 1e-5);
  CHECK(std::abs(fd_hessian_action(linear, {1.0, 2.0}, {0.3, 0.1}, {1e-4})) <= 1e-8);
}

TEST_CASE("Hessian action on a quadratic does not depend on h") {
  // f = x0^2 + 3 x0 x1 + 2 x1^2, s^T H s with H = [[2,3],[3,4]]
  const ScalarField q = [](const DenseVector& x) {
    return x[0] * x[0] + 3 * x[0] * x[1] + 2 * x[1] * x[1];
  };
  const DenseVector x{0.7, -1.1};
  const DenseVector s{0.4, 0.25};
  const double exact = 2 * 0.16 + 6 * 0.1 + 4 * 0.0625;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    CHECK(std::abs(fd_hessian_action(q, x, s, {h}) - exact) <= 1e-6 * std::abs(exact));
  }
}

TEST_CASE("non-finite objective values are reported") {
  const ScalarField bad = [](const DenseVector& x) { return std::log(x[0]); };
  CHECK_THROWS_AS(fd_gradient(bad, {0.0}, {1e-6}), EvaluationError);
}
