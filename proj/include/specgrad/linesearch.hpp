//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>
#include <string>

#include "specgrad/numkit.hpp"
#include "specgrad/problems.hpp"
#include "specgrad/secant.hpp"

namespace specgrad {

struct WolfeParams {
  /// Sufficient decrease coefficient.
  double rho = 0.18;
  /// Curvature coefficient.
  double sigma = 0.2;
  int max_trials = 60;
  double alpha_max = 1e6;

  void validate() const;
};

enum class LineSearchStatus { accepted, max_trials_exceeded, degenerate_direction };

const char* to_string(LineSearchStatus status);

struct LineSearchOutcome {
  LineSearchStatus status = LineSearchStatus::max_trials_exceeded;
  double alpha = 0.0;
  DenseVector x_new;
  double f_new = 0.0;
  DenseVector g_new;
  /// Populated on acceptance. For the standard search t and z are still
  /// computed (they feed the direction update) but take no part in acceptance.
  SecantData secant;
  std::size_t nf_used = 0;
  std::size_t ng_used = 0;
  int trials = 0;
  std::string diagnostic;

  bool accepted() const noexcept { return status == LineSearchStatus::accepted; }
};

/// What the bracketing engine needs to know about one trial step.
struct TrialVerdict {
  /// phi(alpha) = f(x + alpha d); non-finite marks an unusable trial.
  double phi = 0.0;
  /// phi'(alpha) = g(x + alpha d)^T d.
  double dphi = 0.0;
  bool armijo = false;
  bool curvature = false;
  /// Set when the trial cannot be continued from (e.g. the step underflowed).
  bool abort = false;
};

using TrialFunction = std::function<TrialVerdict(double alpha)>;

struct BracketResult {
  bool found = false;
  double alpha = 0.0;
  int trials = 0;
  std::string diagnostic;
};

/// Weak-Wolfe bracketing engine. Doubles alpha while the trial satisfies
/// sufficient decrease but not the curvature test; once a trial fails
/// sufficient decrease, zooms with a safeguarded quadratic interpolant of
/// phi (bisection fallback) so the bracket shrinks by at least 10% per trial.
/// The acceptance predicate itself lives in `trial`.
BracketResult bracket_zoom(const TrialFunction& trial, double phi0, double dphi0,
                           double alpha0, const WolfeParams& params);

/// Standard Wolfe: f(x+ad) <= f + rho a g^T d and g(x+ad)^T d >= sigma g^T d.
LineSearchOutcome standard_wolfe(InstrumentedOracle& oracle, const DenseVector& x,
                                 double f, const DenseVector& g, const DenseVector& d,
                                 const WolfeParams& params,
                                 const SecantParams& secant_params, double alpha0);

/// Modified Wolfe: the curvature test becomes
/// (g(x+ad) + min(t, 0) s)^T d >= sigma g^T d, with mu and t evaluated at the
/// trial point. The safeguard coefficient C is taken from params.rho/sigma.
LineSearchOutcome modified_wolfe(InstrumentedOracle& oracle, const DenseVector& x,
                                 double f, const DenseVector& g, const DenseVector& d,
                                 const WolfeParams& params,
                                 const SecantParams& secant_params, double alpha0);

}  // namespace specgrad
