//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/secant.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace specgrad {

SecantOrder SecantOrder::finite(int m) {
  if (m < 3) throw ArgumentError("secant order must satisfy m >= 3");
  return SecantOrder(m, false);
}

SecantOrder SecantOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinity();
  int m = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, m);
  if (ec != std::errc() || ptr != end) {
    throw ArgumentError("invalid secant order '" + text + "'");
  }
  return finite(m);
}

double SecantOrder::coefficient() const noexcept {
  if (infinite_) return 1.0;
  return static_cast<double>(m_) / static_cast<double>(m_ - 2);
}

std::string SecantOrder::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(m_);
}

void SecantParams::validate() const {
  if (!(0.0 < rho && rho < sigma && sigma < 1.0)) {
    throw ArgumentError("secant params: need 0 < rho < sigma < 1");
  }
}

double mu(double f_k, double f_k1, const DenseVector& g_k, const DenseVector& g_k1,
          const DenseVector& s) {
  if (g_k.size() != s.size() || g_k1.size() != s.size()) {
    throw DimensionError("mu: length mismatch");
  }
  double gs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) gs += (g_k[i] + g_k1[i]) * s[i];
  return 2.0 * (f_k - f_k1) + gs;
}

double t_coefficient(double mu, double s_norm_sq, const SecantParams& params) {
  if (!(s_norm_sq > 0.0)) throw DegenerateStepError("t_coefficient: zero step");
  if (mu > 0.0) return params.order.coefficient() * mu / s_norm_sq;
  return params.safeguard() * mu / s_norm_sq;
}

DenseVector z_vector(const DenseVector& y, const DenseVector& s, double t) {
  return axpy(t, s, y);
}

DenseVector v_vector_m2(const DenseVector& y, const DenseVector& s, double mu,
                        const SecantOrder& order) {
  const double ss = squared_norm(s);
  if (!(ss > 0.0)) throw DegenerateStepError("v_vector_m2: zero step");
  return axpy(order.coefficient() * std::max(mu, 0.0) / ss, s, y);
}

SecantData make_secant_data(const DenseVector& x_k, double f_k, const DenseVector& g_k,
                            const DenseVector& x_k1, double f_k1,
                            const DenseVector& g_k1, const SecantParams& params) {
  SecantData data;
  data.s = subtract(x_k1, x_k);
  data.y = subtract(g_k1, g_k);
  data.mu = mu(f_k, f_k1, g_k, g_k1, data.s);
  data.t = t_coefficient(data.mu, squared_norm(data.s), params);
  data.z = z_vector(data.y, data.s, data.t);
  return data;
}

double hessian_error(const Problem& problem, const DenseVector& x_k1,
                     const DenseVector& s, const SecantOrder& order,
                     std::optional<FiniteDifferenceSpec> fd) {
  const double ss = squared_norm(s);
  if (!(ss > 0.0)) throw DegenerateStepError("hessian_error: zero step");

  InstrumentedOracle oracle(problem);
  const DenseVector x_k = subtract(x_k1, s);
  const auto [f_k, g_k] = oracle.eval_fg(x_k);
  const auto [f_k1, g_k1] = oracle.eval_fg(x_k1);
  const double m = mu(f_k, f_k1, g_k, g_k1, s);
  const DenseVector z =
      z_vector(subtract(g_k1, g_k), s, order.coefficient() * m / ss);

  // Default: perturb x_{k+1} by 1e-3 (1 + |x|_inf) along s.
  const FiniteDifferenceSpec spec =
      fd.value_or(FiniteDifferenceSpec{1e-3 * (1.0 + norm_inf(x_k1)) / norm_inf(s)});
  const double curvature = fd_hessian_action(problem.objective, x_k1, s, spec);
  return curvature - dot(s, z);
}

}  // namespace specgrad
