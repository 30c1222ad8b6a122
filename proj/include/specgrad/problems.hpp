//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specgrad/numkit.hpp"

namespace specgrad {

/// Unknown problem name or a dimension the family does not support.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A smooth unconstrained test function with its analytic gradient.
struct Problem {
  std::string name;
  std::size_t dimension = 0;
  std::function<double(const DenseVector&)> objective;
  std::function<DenseVector(const DenseVector&)> gradient;
  DenseVector start;
  /// Gradient Lipschitz constant, set only where it is known exactly.
  std::optional<double> lipschitz_hint;
};

/// A named family of test problems, instantiable at a range of dimensions.
struct ProblemFamily {
  std::string name;
  std::string description;
  /// Paired-variable families only accept even n.
  bool even_only = false;
  std::size_t min_dimension = 2;
  std::function<Problem(std::size_t)> make;
};

/// The benchmark suite, in a fixed order.
const std::vector<ProblemFamily>& registry();

/// All registered family names, in registry order.
std::vector<std::string> problem_names();

/// Throws LookupError for an unknown name or unsupported n.
Problem make_problem(const std::string& name, std::size_t n);

/// f(x) = 1/2 x^T A x + b^T x with A = M^T M / n + I, M and b drawn from a
/// seeded normal distribution. Lipschitz hint is the largest eigenvalue of A.
Problem random_quadratic(std::size_t n, std::uint64_t seed);

/// f(x) = sum x_i^p starting from all-ones. Not part of the suite; used for
/// secant-accuracy diagnostics (p = 3) and trace checks (p = 4).
Problem power_sum(std::size_t n, int p);

// ----------------------------------------------------------------------------
// Instrumented evaluation
// ----------------------------------------------------------------------------

struct EvalCounter {
  std::size_t nf = 0;
  std::size_t ng = 0;

  friend bool operator==(const EvalCounter&, const EvalCounter&) = default;
};

/// Counts every objective and gradient evaluation issued against a problem.
/// Single owner; one oracle per run.
class InstrumentedOracle {
 public:
  explicit InstrumentedOracle(const Problem& problem) : problem_(&problem) {}

  double eval_f(const DenseVector& x);
  DenseVector eval_g(const DenseVector& x);
  /// Counts one objective and one gradient evaluation.
  std::pair<double, DenseVector> eval_fg(const DenseVector& x);

  const EvalCounter& counters() const noexcept { return counters_; }
  const Problem& problem() const noexcept { return *problem_; }

 private:
  const Problem* problem_;
  EvalCounter counters_;
};

struct GradientCheckReport {
  /// |g - g_fd|_inf / (1 + |g|_inf) at each point.
  std::vector<double> relative_errors;
  double worst = 0.0;
  bool pass = true;
};

/// Compares the analytic gradient against central differences with step
/// 1e-6 * (1 + |x|_inf).
GradientCheckReport gradient_check(const Problem& problem,
                                   const std::vector<DenseVector>& points,
                                   double tol);

/// The start point followed by `count` uniform perturbations of it in
/// [-radius, radius]^n, drawn from a fixed seed.
std::vector<DenseVector> perturbed_points(const Problem& problem,
                                          std::size_t count,
                                          std::uint64_t seed = 20240611,
                                          double radius = 0.5);

}  // namespace specgrad
