//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specgrad {

void WolfeParams::validate() const {
  if (!(0.0 < rho && rho < sigma && sigma < 1.0)) {
    throw ArgumentError("wolfe params: need 0 < rho < sigma < 1");
  }
  if (max_trials <= 0) throw ArgumentError("wolfe params: max_trials must be positive");
  if (!(alpha_max > 0.0)) throw ArgumentError("wolfe params: alpha_max must be positive");
}

const char* to_string(LineSearchStatus status) {
  switch (status) {
    case LineSearchStatus::accepted:
      return "accepted";
    case LineSearchStatus::max_trials_exceeded:
      return "max_trials_exceeded";
    case LineSearchStatus::degenerate_direction:
      return "degenerate_direction";
  }
  return "unknown";
}

BracketResult bracket_zoom(const TrialFunction& trial, double phi0, double dphi0,
                           double alpha0, const WolfeParams& params) {
  if (!(dphi0 < 0.0)) throw ArgumentError("bracket_zoom: need phi'(0) < 0");
  if (!(alpha0 > 0.0)) throw ArgumentError("bracket_zoom: need alpha0 > 0");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double phi_lo = phi0;
  double dphi_lo = dphi0;
  double hi = kInf;
  double phi_hi = kInf;
  double alpha = std::min(alpha0, params.alpha_max);

  BracketResult result;
  while (result.trials < params.max_trials) {
    ++result.trials;
    const TrialVerdict v = trial(alpha);
    if (v.abort) {
      result.diagnostic = "trial aborted at alpha=" + std::to_string(alpha);
      return result;
    }
    if (v.armijo && v.curvature && std::isfinite(v.phi)) {
      result.found = true;
      result.alpha = alpha;
      return result;
    }
    if (!v.armijo || !std::isfinite(v.phi)) {
      hi = alpha;
      phi_hi = v.phi;
    } else {
      lo = alpha;
      phi_lo = v.phi;
      dphi_lo = v.dphi;
    }

    if (hi == kInf) {
      if (alpha >= params.alpha_max) {
        result.diagnostic = "alpha_max reached without bracketing";
        return result;
      }
      alpha = std::min(2.0 * alpha, params.alpha_max);
      continue;
    }

    const double width = hi - lo;
    double next = lo + 0.5 * width;
    if (std::isfinite(phi_hi) && std::isfinite(dphi_lo)) {
      const double curv = (phi_hi - phi_lo - dphi_lo * width) / (width * width);
      if (curv > 0.0) {
        const double cand = lo - dphi_lo / (2.0 * curv);
        if (std::isfinite(cand)) next = cand;
      }
    }
    next = std::clamp(next, lo + 0.1 * width, hi - 0.1 * width);
    if (!(next > lo && next < hi)) {
      result.diagnostic = "bracket collapsed to rounding level";
      return result;
    }
    alpha = next;
  }
  result.diagnostic = "trial budget exhausted";
  return result;
}

namespace {

constexpr double kArmijoSlack = 5e-13;

LineSearchOutcome search(InstrumentedOracle& oracle, const DenseVector& x, double f,
                         const DenseVector& g, const DenseVector& d,
                         const WolfeParams& params, const SecantParams& secant_params,
                         double alpha0, bool modified) {
  params.validate();
  if (!(alpha0 > 0.0)) throw ArgumentError("line search: alpha0 must be positive");

  const SecantParams sp{secant_params.order, params.rho, params.sigma};
  const EvalCounter before = oracle.counters();
  LineSearchOutcome out;

  const double gd = dot(g, d);
  // Rounding allowance on f; without it runs stall once the predicted
  // decrease falls below the noise in f.
  const double f_slack = kArmijoSlack * (1.0 + std::abs(f));
  if (!(gd < 0.0)) {
    out.status = LineSearchStatus::degenerate_direction;
    out.diagnostic = "g^T d >= 0";
    return out;
  }

  // Last evaluated trial, kept so acceptance needs no re-evaluation.
  DenseVector x_t;
  DenseVector g_t;
  double f_t = 0.0;
  double mu_t = 0.0;
  double t_t = 0.0;

  const TrialFunction trial = [&](double alpha) {
    TrialVerdict v;
    x_t = axpy(alpha, d, x);
    const DenseVector s = subtract(x_t, x);
    const double ss = squared_norm(s);
    if (!(ss > 0.0)) {
      v.abort = true;
      return v;
    }
    try {
      auto [fv, gv] = oracle.eval_fg(x_t);
      f_t = fv;
      g_t = std::move(gv);
    } catch (const EvaluationError&) {
      v.phi = std::numeric_limits<double>::quiet_NaN();
      return v;
    }
    v.phi = f_t;
    v.dphi = dot(g_t, d);
    v.armijo = f_t <= f + params.rho * alpha * gd + f_slack;
    mu_t = mu(f, f_t, g, g_t, s);
    t_t = t_coefficient(mu_t, ss, sp);
    double lhs = v.dphi;
    if (modified) lhs += std::min(t_t, 0.0) * dot(s, d);
    v.curvature = lhs >= params.sigma * gd;
    return v;
  };

  const BracketResult br = bracket_zoom(trial, f, gd, alpha0, params);
  out.trials = br.trials;
  out.nf_used = oracle.counters().nf - before.nf;
  out.ng_used = oracle.counters().ng - before.ng;
  if (!br.found) {
    out.status = LineSearchStatus::max_trials_exceeded;
    out.diagnostic = br.diagnostic;
    return out;
  }

  out.status = LineSearchStatus::accepted;
  out.alpha = br.alpha;
  out.secant.s = subtract(x_t, x);
  out.secant.y = subtract(g_t, g);
  out.secant.mu = mu_t;
  out.secant.t = t_t;
  out.secant.z = z_vector(out.secant.y, out.secant.s, t_t);
  out.x_new = std::move(x_t);
  out.f_new = f_t;
  out.g_new = std::move(g_t);
  return out;
}

}  // namespace

LineSearchOutcome standard_wolfe(InstrumentedOracle& oracle, const DenseVector& x,
                                 double f, const DenseVector& g, const DenseVector& d,
                                 const WolfeParams& params,
                                 const SecantParams& secant_params, double alpha0) {
  return search(oracle, x, f, g, d, params, secant_params, alpha0, false);
}

LineSearchOutcome modified_wolfe(InstrumentedOracle& oracle, const DenseVector& x,
                                 double f, const DenseVector& g, const DenseVector& d,
                                 const WolfeParams& params,
                                 const SecantParams& secant_params, double alpha0) {
  return search(oracle, x, f, g, d, params, secant_params, alpha0, true);
}

}  // namespace specgrad
