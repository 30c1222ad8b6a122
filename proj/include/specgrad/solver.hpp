//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specgrad/directions.hpp"
#include "specgrad/linesearch.hpp"
#include "specgrad/problems.hpp"
#include "specgrad/secant.hpp"

namespace specgrad {

enum class TraceLevel { none, summary, full };

/// Everything known about one completed iteration k -> k+1. References are
/// only valid for the duration of the observer call.
struct StepView {
  std::size_t k;
  Method method;
  const WolfeParams& wolfe;
  const DirectionParams& direction;
  const DenseVector& x;
  double f;
  const DenseVector& g;
  const DenseVector& d;
  double alpha;
  const DenseVector& x_new;
  double f_new;
  const DenseVector& g_new;
  const SecantData& secant;
  const DenseVector& d_new;
  const DirectionDiag& diag;
};

using StepObserver = std::function<void(const StepView&)>;

struct SolverConfig {
  /// Stop when |g|_inf <= epsilon.
  double epsilon = 1e-8;
  /// Upper bound on accepted steps.
  std::size_t max_iter = 10000;
  WolfeParams wolfe;
  DirectionParams direction;
  TraceLevel trace_level = TraceLevel::none;
  /// Optional per-iteration hook (auditing, custom tracing).
  StepObserver observer;

  /// Published settings: eta = 1e-3, tau = 10, (rho, sigma) = (0.18, 0.2)
  /// for scgmmwls and (0.1, 0.9) for the baselines.
  static SolverConfig defaults(Method method,
                               SecantOrder order = SecantOrder::finite(3));
  void validate() const;
};

enum class RunStatus { converged, iter_limit, linesearch_failure, eval_error };

const char* to_string(RunStatus status);
/// Throws ArgumentError on an unknown name.
RunStatus parse_run_status(const std::string& name);

struct IterationRecord {
  std::size_t k = 0;
  double f = 0.0;
  double gnorm_inf = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  double t = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  bool restart = false;
};

struct RunResult {
  RunStatus status = RunStatus::iter_limit;
  std::size_t ni = 0;
  std::size_t nf = 0;
  std::size_t ng = 0;
  double f_final = 0.0;
  double gnorm_inf_final = 0.0;
  std::optional<std::vector<IterationRecord>> trace;
  std::string message;
};

/// Runs the configured method from problem.start. Line-search and evaluation
/// failures are reported through RunResult::status; the partial result keeps
/// the last accepted iterate's values and the oracle's counters.
RunResult minimize(const Problem& problem, const SolverConfig& config);

/// (k, mu_k) for the first `limit` iterations of a full-trace run.
std::vector<std::pair<std::size_t, double>> mu_sign_trace(const Problem& problem,
                                                          SolverConfig config,
                                                          std::size_t limit = 24);

// ----------------------------------------------------------------------------
// Post-hoc step audit
// ----------------------------------------------------------------------------

struct AuditReport {
  std::size_t steps = 0;
  std::size_t armijo_violations = 0;
  std::size_t curvature_violations = 0;
  /// d^T z >= (1 - sigma)(-g^T d); checked for scgmmwls only.
  std::size_t secant_curvature_violations = 0;
  /// -C L <= t <= m/(m-2) L; checked only when a Lipschitz hint is supplied.
  std::size_t t_bound_violations = 0;
  /// g+^T d+ <= -eta |g+|^2 (+ 1e-12 |g+|^2); scgmmwls, m2 and jian.
  std::size_t descent_violations = 0;
  /// theta outside [1/4 + eta, tau] and not exactly 1.
  std::size_t theta_violations = 0;
  std::vector<std::string> messages;

  std::size_t total() const noexcept;
  void merge(const AuditReport& other);
};

/// Re-derives every acceptance predicate from the raw step data with its own
/// arithmetic. Attach with `config.observer = auditor.observer()`.
class StepAuditor {
 public:
  explicit StepAuditor(std::optional<double> lipschitz = std::nullopt,
                       double rel_tol = 1e-12)
      : lipschitz_(lipschitz), rel_tol_(rel_tol) {}

  void check(const StepView& step);
  StepObserver observer() {
    return [this](const StepView& step) { check(step); };
  }
  const AuditReport& report() const noexcept { return report_; }

 private:
  void flag(std::size_t& counter, const StepView& step, const char* what);

  std::optional<double> lipschitz_;
  double rel_tol_;
  AuditReport report_;
};

}  // namespace specgrad
