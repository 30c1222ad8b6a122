//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specgrad {

namespace {

void require_same_length(const DenseVector& u, const DenseVector& v,
                         const char* op) {
  if (u.size() != v.size()) {
    std::ostringstream msg;
    msg << op << ": length mismatch (" << u.size() << " vs " << v.size() << ")";
    throw DimensionError(msg.str());
  }
}

double checked_eval(const ScalarField& f, const DenseVector& x) {
  const double value = f(x);
  if (!std::isfinite(value)) {
    throw EvaluationError("<finite-difference>", x.values(),
                          "non-finite objective during finite differencing");
  }
  return value;
}

}  // namespace

EvaluationError::EvaluationError(std::string problem, std::vector<double> point,
                                 const std::string& what)
    : Error(problem + ": " + what),
      problem_(std::move(problem)),
      point_(std::move(point)) {}

bool DenseVector::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

double dot(const DenseVector& u, const DenseVector& v) {
  require_same_length(u, v, "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  return sum;
}

double squared_norm(const DenseVector& u) {
  double sum = 0.0;
  for (double x : u) sum += x * x;
  return sum;
}

double norm2(const DenseVector& u) { return std::sqrt(squared_norm(u)); }

double norm_inf(const DenseVector& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

DenseVector axpy(double a, const DenseVector& u, const DenseVector& v) {
  require_same_length(u, v, "axpy");
  DenseVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i] + v[i];
  return out;
}

DenseVector scale(double a, const DenseVector& u) {
  DenseVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i];
  return out;
}

DenseVector subtract(const DenseVector& u, const DenseVector& v) {
  require_same_length(u, v, "subtract");
  DenseVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

void add_scaled(DenseVector& v, double a, const DenseVector& u) {
  require_same_length(u, v, "add_scaled");
  for (std::size_t i = 0; i < u.size(); ++i) v[i] += a * u[i];
}

FiniteDifferenceSpec FiniteDifferenceSpec::scaled(const DenseVector& x,
                                                  double base) {
  return FiniteDifferenceSpec{base * (1.0 + norm_inf(x))};
}

DenseVector fd_gradient(const ScalarField& f, const DenseVector& x,
                        const FiniteDifferenceSpec& spec) {
  if (!(spec.step > 0.0)) throw ArgumentError("fd_gradient: step must be > 0");
  DenseVector grad(x.size());
  DenseVector probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    probe[i] = xi + spec.step;
    const double plus = checked_eval(f, probe);
    probe[i] = xi - spec.step;
    const double minus = checked_eval(f, probe);
    probe[i] = xi;
    grad[i] = (plus - minus) / (2.0 * spec.step);
  }
  return grad;
}

double fd_hessian_action(const ScalarField& f, const DenseVector& x,
                         const DenseVector& s, const FiniteDifferenceSpec& spec) {
  if (!(spec.step > 0.0)) {
    throw ArgumentError("fd_hessian_action: step must be > 0");
  }
  require_same_length(x, s, "fd_hessian_action");
  const double h = spec.step;
  const double center = checked_eval(f, x);
  const double plus = checked_eval(f, axpy(h, s, x));
  const double minus = checked_eval(f, axpy(-h, s, x));
  return ((plus - center) + (minus - center)) / (h * h);
}

}  // namespace specgrad
