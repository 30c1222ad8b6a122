//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/directions.hpp"

#include <algorithm>
#include <cmath>

namespace specgrad {

namespace {

constexpr double kTiny = 1e-300;

Direction steepest(const DenseVector& g, const DirectionDiag& partial) {
  Direction out{scale(-1.0, g), partial};
  out.diag.beta = 0.0;
  out.diag.theta = 1.0;
  out.diag.restart = true;
  return out;
}

// Enforces g^T d <= -eta |g|^2, falling back to -g.
Direction with_descent_guard(const DenseVector& g, Direction candidate,
                             const DirectionParams& params) {
  const double gd = dot(g, candidate.d);
  const double gg = squared_norm(g);
  if (std::isfinite(gd) && gd <= -params.eta * gg) return candidate;
  return steepest(g, candidate.diag);
}

// Shared body of SCGMMWLS and M2: w is z (modified Wolfe) or v (M2).
Direction spectral_direction(const DenseVector& g_k1, const PreviousStep& prev,
                             const DenseVector& w, const DirectionParams& params) {
  DirectionDiag diag;
  BetaM beta;
  try {
    beta = beta_M(g_k1, prev.g, prev.d, w);
  } catch (const DegenerateCurvatureError&) {
    return steepest(g_k1, diag);
  }
  diag.beta = beta.value;
  diag.truncated_beta = beta.truncated;

  double theta = 1.0;
  try {
    const double raw = theta_tilde(g_k1, prev.s, prev.d, w, beta.value);
    theta = theta_bar(raw, params);
    diag.truncated_theta = theta != raw;
  } catch (const DegenerateSpectralError&) {
    theta = 1.0;
    diag.truncated_theta = true;
  }
  diag.theta = theta;

  Direction out{scale(-theta, g_k1), diag};
  add_scaled(out.d, beta.value, prev.d);
  return with_descent_guard(g_k1, std::move(out), params);
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::scgmmwls:
      return "scgmmwls";
    case Method::dk:
      return "dk";
    case Method::jian:
      return "jian";
    case Method::m2:
      return "m2";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "scgmmwls" || name == "m1") return Method::scgmmwls;
  if (name == "dk") return Method::dk;
  if (name == "jian") return Method::jian;
  if (name == "m2") return Method::m2;
  throw ArgumentError("unknown method '" + name + "'");
}

void DirectionParams::validate() const {
  if (!(eta > 0.0)) throw ArgumentError("direction params: eta must be positive");
  if (!(theta_lower() < tau)) {
    throw ArgumentError("direction params: need 1/4 + eta < tau");
  }
}

BetaM beta_M(const DenseVector& g_k1, const DenseVector& g_k, const DenseVector& d,
             const DenseVector& z) {
  const double dd = squared_norm(d);
  const double dz = dot(d, z);
  const double zz = squared_norm(z);
  if (!(dd > 0.0) || !(std::abs(dz) > kTiny * std::sqrt(dd) * std::sqrt(zz))) {
    throw DegenerateCurvatureError("beta_M: d^T z vanished");
  }
  BetaM b;
  const double ratio = dot(g_k1, d) / dz;
  b.lower = dot(g_k1, z) / dz - (zz / dz) * ratio;
  b.upper = dot(g_k, d) / dd;
  if (!std::isfinite(b.lower)) throw DegenerateCurvatureError("beta_M: overflow");
  b.truncated = b.lower < b.upper;
  b.value = b.truncated ? b.upper : b.lower;
  return b;
}

double theta_tilde(const DenseVector& g_k1, const DenseVector& s, const DenseVector& d,
                   const DenseVector& z, double beta) {
  const double gz = dot(g_k1, z);
  if (!(std::abs(gz) > kTiny * norm2(g_k1) * norm2(z))) {
    throw DegenerateSpectralError("theta_tilde: g^T z vanished");
  }
  const double theta = (dot(s, g_k1) + beta * dot(d, z)) / gz;
  if (!std::isfinite(theta)) throw DegenerateSpectralError("theta_tilde: overflow");
  return theta;
}

double theta_bar(double theta_t, const DirectionParams& params) {
  if (theta_t >= params.theta_lower() && theta_t <= params.tau) return theta_t;
  return 1.0;
}

Direction next_direction_scgmmwls(const DenseVector& g_k1, const PreviousStep& prev,
                                  const SecantData& secant,
                                  const DirectionParams& params) {
  return spectral_direction(g_k1, prev, secant.z, params);
}

Direction next_direction_m2(const DenseVector& g_k1, const PreviousStep& prev,
                            const DenseVector& y, double mu,
                            const DirectionParams& params) {
  DenseVector v;
  try {
    v = v_vector_m2(y, prev.s, mu, params.secant.order);
  } catch (const DegenerateStepError&) {
    return steepest(g_k1, {});
  }
  return spectral_direction(g_k1, prev, v, params);
}

Direction next_direction_dk(const DenseVector& g_k1, const PreviousStep& prev,
                            const DenseVector& y, const DirectionParams& params) {
  const double dy = dot(prev.d, y);
  if (!(std::abs(dy) > kTiny * norm2(prev.d) * norm2(y))) return steepest(g_k1, {});
  const double beta = dot(y, g_k1) / dy - squared_norm(y) * dot(prev.d, g_k1) / (dy * dy);
  if (!std::isfinite(beta)) return steepest(g_k1, {});

  Direction out{scale(-1.0, g_k1), {}};
  out.diag.beta = beta;
  add_scaled(out.d, beta, prev.d);
  return with_descent_guard(g_k1, std::move(out), params);
}

Direction next_direction_jian(const DenseVector& g_k1, const PreviousStep& prev,
                              const DenseVector& y, const DirectionParams& params) {
  const double dy = dot(prev.d, y);
  if (!(std::abs(dy) > kTiny * norm2(prev.d) * norm2(y))) return steepest(g_k1, {});
  const double yg = dot(y, g_k1);
  const double dg = dot(prev.d, g_k1);
  const double yy = squared_norm(y);
  const double beta = yg / dy - yy * dg / (dy * dy);
  if (!std::isfinite(beta)) return steepest(g_k1, {});

  DirectionDiag diag;
  diag.beta = beta;
  double theta = 1.0;
  if (std::abs(yg) > kTiny * norm2(y) * norm2(g_k1)) {
    const double raw = 1.0 - (yy * dg / dy - dot(prev.s, g_k1)) / yg;
    theta = theta_bar(raw, params);
    diag.truncated_theta = theta != raw;
  } else {
    diag.truncated_theta = true;
  }
  diag.theta = theta;

  Direction out{scale(-theta, g_k1), diag};
  add_scaled(out.d, beta, prev.d);
  return with_descent_guard(g_k1, std::move(out), params);
}

Direction next_direction(const DenseVector& g_k1, const PreviousStep& prev,
                         const SecantData& secant, const DirectionParams& params) {
  switch (params.method) {
    case Method::scgmmwls:
      return next_direction_scgmmwls(g_k1, prev, secant, params);
    case Method::dk:
      return next_direction_dk(g_k1, prev, secant.y, params);
    case Method::jian:
      return next_direction_jian(g_k1, prev, secant.y, params);
    case Method::m2:
      return next_direction_m2(g_k1, prev, secant.y, secant.mu, params);
  }
  throw ArgumentError("next_direction: unknown method");
}

}  // namespace specgrad
