//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace specgrad {

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of a binary vector operation have different lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain of an operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DenseVector;

/// An objective or gradient evaluation produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(std::string problem, std::vector<double> point,
                  const std::string& what);

  const std::string& problem() const noexcept { return problem_; }
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::string problem_;
  std::vector<double> point_;
};

// ----------------------------------------------------------------------------
// DenseVector
// ----------------------------------------------------------------------------

/// Fixed-length vector of doubles. Carries iterates, gradients, directions
/// and secant pairs. The length never changes after construction.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, double value = 0.0) : data_(n, value) {}
  explicit DenseVector(std::vector<double> values) : data_(std::move(values)) {}
  DenseVector(std::initializer_list<double> values) : data_(values) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }

  std::span<const double> view() const noexcept { return data_; }
  std::span<double> view() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }
  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }

  bool all_finite() const noexcept;

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> data_;
};

double dot(const DenseVector& u, const DenseVector& v);
double norm2(const DenseVector& u);
double norm_inf(const DenseVector& u);
double squared_norm(const DenseVector& u);

/// a*u + v
DenseVector axpy(double a, const DenseVector& u, const DenseVector& v);
DenseVector scale(double a, const DenseVector& u);
/// u - v
DenseVector subtract(const DenseVector& u, const DenseVector& v);

/// v += a*u, in place.
void add_scaled(DenseVector& v, double a, const DenseVector& u);

// ----------------------------------------------------------------------------
// Finite differences
// ----------------------------------------------------------------------------

using ScalarField = std::function<double(const DenseVector&)>;

/// Central-difference step. `step` is an absolute perturbation along each
/// coordinate (fd_gradient) or a multiplier of the direction (fd_hessian_action).
struct FiniteDifferenceSpec {
  double step = 1e-6;

  /// h = base * (1 + |x|_inf)
  static FiniteDifferenceSpec scaled(const DenseVector& x, double base = 1e-6);
};

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h for every coordinate.
DenseVector fd_gradient(const ScalarField& f, const DenseVector& x,
                        const FiniteDifferenceSpec& spec);

/// s^T H(x) s from the second difference (f(x+hs) - 2f(x) + f(x-hs)) / h^2.
double fd_hessian_action(const ScalarField& f, const DenseVector& x,
                         const DenseVector& s, const FiniteDifferenceSpec& spec);

}  // namespace specgrad
