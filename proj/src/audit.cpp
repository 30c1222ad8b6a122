//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "specgrad/solver.hpp"

namespace specgrad {

namespace {

// Plain loops on purpose: the audit must not share arithmetic with the
// code paths it checks.
double inner(const DenseVector& a, const DenseVector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

std::size_t AuditReport::total() const noexcept {
  return armijo_violations + curvature_violations + secant_curvature_violations +
         t_bound_violations + descent_violations + theta_violations;
}

void AuditReport::merge(const AuditReport& other) {
  steps += other.steps;
  armijo_violations += other.armijo_violations;
  curvature_violations += other.curvature_violations;
  secant_curvature_violations += other.secant_curvature_violations;
  t_bound_violations += other.t_bound_violations;
  descent_violations += other.descent_violations;
  theta_violations += other.theta_violations;
  messages.insert(messages.end(), other.messages.begin(), other.messages.end());
}

void StepAuditor::flag(std::size_t& counter, const StepView& step, const char* what) {
  ++counter;
  if (report_.messages.size() < 50) {
    std::ostringstream msg;
    msg << to_string(step.method) << " k=" << step.k << ": " << what;
    report_.messages.push_back(msg.str());
  }
}

void StepAuditor::check(const StepView& step) {
  ++report_.steps;
  const std::size_t n = step.x.size();
  const double rho = step.wolfe.rho;
  const double sigma = step.wolfe.sigma;

  DenseVector s(n);
  DenseVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = step.x_new[i] - step.x[i];
    y[i] = step.g_new[i] - step.g[i];
  }
  const double gd = inner(step.g, step.d);
  const double gnew_d = inner(step.g_new, step.d);
  const double sd = inner(s, step.d);
  const double ss = inner(s, s);

  if (!(step.f_new <= step.f + rho * step.alpha * gd + rel_tol_ * (1.0 + std::abs(step.f)))) {
    flag(report_.armijo_violations, step, "sufficient decrease violated");
  }

  // mu and t from first principles.
  double gsum_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) gsum_s += (step.g[i] + step.g_new[i]) * s[i];
  const double mu = 2.0 * (step.f - step.f_new) + gsum_s;
  const double c = (sigma - rho) / (1.0 - 2.0 * rho + sigma);
  const SecantOrder& order = step.direction.secant.order;
  const double coef = order.is_infinite()
                          ? 1.0
                          : static_cast<double>(order.value()) / (order.value() - 2.0);
  const double t = (mu > 0.0 ? coef : c) * mu / ss;

  const double curv_tol = rel_tol_ * std::abs(gd);
  if (step.method == Method::scgmmwls) {
    if (!(gnew_d + std::min(t, 0.0) * sd >= sigma * gd - curv_tol)) {
      flag(report_.curvature_violations, step, "modified curvature violated");
    }
    const double dz = gnew_d - gd + t * sd;
    if (!(dz >= (1.0 - sigma) * (-gd) - curv_tol)) {
      flag(report_.secant_curvature_violations, step, "d^T z below (1-sigma)(-g^T d)");
    }
    if (lipschitz_) {
      const double big_l = *lipschitz_;
      const double slack = std::numeric_limits<double>::epsilon() * (1.0 + big_l);
      if (!(t >= -c * big_l - slack && t <= coef * big_l + slack)) {
        flag(report_.t_bound_violations, step, "t outside [-C L, m/(m-2) L]");
      }
    }
  } else if (!(gnew_d >= sigma * gd - curv_tol)) {
    flag(report_.curvature_violations, step, "curvature violated");
  }

  if (step.method != Method::dk) {
    const double gg = inner(step.g_new, step.g_new);
    const double eta = step.direction.eta;
    if (!(inner(step.g_new, step.d_new) <= -eta * gg + 1e-12 * gg)) {
      flag(report_.descent_violations, step, "sufficient descent violated");
    }
    const double theta = step.diag.theta;
    const bool in_range = theta >= 0.25 + eta && theta <= step.direction.tau;
    if (!(in_range || theta == 1.0)) {
      flag(report_.theta_violations, step, "theta outside admissible set");
    }
  }
}

}  // namespace specgrad
