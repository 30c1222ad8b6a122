//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specgrad {

SolverConfig SolverConfig::defaults(Method method, SecantOrder order) {
  SolverConfig config;
  config.direction.method = method;
  config.direction.secant.order = order;
  if (method == Method::scgmmwls) {
    config.wolfe.rho = 0.18;
    config.wolfe.sigma = 0.2;
  } else {
    config.wolfe.rho = 0.1;
    config.wolfe.sigma = 0.9;
  }
  config.direction.secant.rho = config.wolfe.rho;
  config.direction.secant.sigma = config.wolfe.sigma;
  return config;
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw ArgumentError("solver config: epsilon must be positive");
  wolfe.validate();
  direction.validate();
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged:
      return "converged";
    case RunStatus::iter_limit:
      return "iter_limit";
    case RunStatus::linesearch_failure:
      return "linesearch_failure";
    case RunStatus::eval_error:
      return "eval_error";
  }
  return "unknown";
}

RunStatus parse_run_status(const std::string& name) {
  for (RunStatus s : {RunStatus::converged, RunStatus::iter_limit,
                      RunStatus::linesearch_failure, RunStatus::eval_error}) {
    if (name == to_string(s)) return s;
  }
  throw ArgumentError("unknown run status '" + name + "'");
}

RunResult minimize(const Problem& problem, const SolverConfig& config) {
  config.validate();
  InstrumentedOracle oracle(problem);
  RunResult result;
  if (config.trace_level == TraceLevel::full) result.trace.emplace();

  auto finish = [&](RunStatus status, double f, double gnorm, std::size_t k) {
    result.status = status;
    result.ni = k;
    result.nf = oracle.counters().nf;
    result.ng = oracle.counters().ng;
    result.f_final = f;
    result.gnorm_inf_final = gnorm;
    return result;
  };

  DenseVector x = problem.start;
  double f = 0.0;
  DenseVector g;
  try {
    std::tie(f, g) = oracle.eval_fg(x);
  } catch (const EvaluationError& e) {
    result.message = e.what();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return finish(RunStatus::eval_error, nan, nan, 0);
  }

  const Method method = config.direction.method;
  const SecantParams secant_params{config.direction.secant.order, config.wolfe.rho,
                                   config.wolfe.sigma};
  DenseVector d = scale(-1.0, g);
  double alpha_prev = 0.0;
  double gd_prev = 0.0;

  for (std::size_t k = 0;; ++k) {
    const double gnorm = norm_inf(g);
    if (gnorm <= config.epsilon) return finish(RunStatus::converged, f, gnorm, k);
    if (k >= config.max_iter) return finish(RunStatus::iter_limit, f, gnorm, k);

    const double gd = dot(g, d);
    double alpha0 = (k == 0) ? 1.0 / gnorm : alpha_prev * gd_prev / gd;
    if (!std::isfinite(alpha0)) alpha0 = 1.0;
    alpha0 = std::clamp(alpha0, 1e-10, config.wolfe.alpha_max);

    LineSearchOutcome ls =
        (method == Method::scgmmwls)
            ? modified_wolfe(oracle, x, f, g, d, config.wolfe, secant_params, alpha0)
            : standard_wolfe(oracle, x, f, g, d, config.wolfe, secant_params, alpha0);
    if (!ls.accepted()) {
      result.message = std::string(to_string(ls.status)) + ": " + ls.diagnostic;
      return finish(RunStatus::linesearch_failure, f, gnorm, k);
    }

    Direction next =
        next_direction(ls.g_new, PreviousStep{d, ls.secant.s, g}, ls.secant, config.direction);

    if (config.observer) {
      config.observer(StepView{k, method, config.wolfe, config.direction, x, f, g, d,
                               ls.alpha, ls.x_new, ls.f_new, ls.g_new, ls.secant,
                               next.d, next.diag});
    }
    if (result.trace) {
      result.trace->push_back(IterationRecord{k, f, gnorm, ls.alpha, ls.secant.mu,
                                              ls.secant.t, next.diag.beta,
                                              next.diag.theta, next.diag.restart});
    }

    alpha_prev = ls.alpha;
    gd_prev = gd;
    x = std::move(ls.x_new);
    f = ls.f_new;
    g = std::move(ls.g_new);
    d = std::move(next.d);
  }
}

std::vector<std::pair<std::size_t, double>> mu_sign_trace(const Problem& problem,
                                                          SolverConfig config,
                                                          std::size_t limit) {
  config.trace_level = TraceLevel::full;
  const RunResult run = minimize(problem, config);
  std::vector<std::pair<std::size_t, double>> out;
  for (const IterationRecord& rec : *run.trace) {
    if (out.size() >= limit) break;
    out.emplace_back(rec.k, rec.mu);
  }
  return out;
}

}  // namespace specgrad
