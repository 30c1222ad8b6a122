//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>

#include "specgrad/numkit.hpp"
#include "specgrad/problems.hpp"

namespace specgrad {

/// Raised when a secant quantity would divide by |s|^2 = 0.
class DegenerateStepError : public Error {
 public:
  using Error::Error;
};

/// Order m of the modified secant family. Either a finite integer m >= 3 or
/// the limit m -> infinity, whose coefficient m/(m-2) is exactly 1.
class SecantOrder {
 public:
  static SecantOrder finite(int m);
  static SecantOrder infinity() { return SecantOrder(0, true); }
  /// Accepts "3", "4", ..., "inf", "infinity".
  static SecantOrder parse(const std::string& text);

  bool is_infinite() const noexcept { return infinite_; }
  int value() const noexcept { return m_; }
  /// m / (m - 2), or 1 for m = infinity.
  double coefficient() const noexcept;
  std::string to_string() const;

  friend bool operator==(const SecantOrder&, const SecantOrder&) = default;

 private:
  SecantOrder(int m, bool infinite) : m_(m), infinite_(infinite) {}
  int m_;
  bool infinite_;
};

/// Order plus the line-search pair (rho, sigma) that fixes the safeguard
/// coefficient C = (sigma - rho) / (1 - 2 rho + sigma).
struct SecantParams {
  SecantOrder order = SecantOrder::finite(3);
  double rho = 0.18;
  double sigma = 0.2;

  /// Throws ArgumentError unless 0 < rho < sigma < 1.
  void validate() const;
  double safeguard() const noexcept { return (sigma - rho) / (1.0 - 2.0 * rho + sigma); }
};

/// Secant bundle for one accepted step: z = y + t s.
struct SecantData {
  DenseVector s;
  DenseVector y;
  double mu = 0.0;
  double t = 0.0;
  DenseVector z;
};

/// 2 (f_k - f_{k+1}) + (g_k + g_{k+1})^T s
double mu(double f_k, double f_k1, const DenseVector& g_k, const DenseVector& g_k1,
          const DenseVector& s);

/// Safeguarded scaling: m/(m-2) mu/|s|^2 for mu > 0, C mu/|s|^2 otherwise.
double t_coefficient(double mu, double s_norm_sq, const SecantParams& params);

DenseVector z_vector(const DenseVector& y, const DenseVector& s, double t);

/// y + m/(m-2) max(mu, 0)/|s|^2 s. The variant that discards negative mu.
DenseVector v_vector_m2(const DenseVector& y, const DenseVector& s, double mu,
                        const SecantOrder& order);

/// Assembles the full bundle from the two end points of a step.
SecantData make_secant_data(const DenseVector& x_k, double f_k, const DenseVector& g_k,
                            const DenseVector& x_k1, double f_k1,
                            const DenseVector& g_k1, const SecantParams& params);

/// s^T H(x_{k+1}) s - s^T z, with z = y + m/(m-2) mu/|s|^2 s the unsafeguarded
/// family member and x_k = x_{k+1} - s. The Hessian term comes from a second
/// difference along s. Diagnostic only; solvers never call this.
double hessian_error(const Problem& problem, const DenseVector& x_k1,
                     const DenseVector& s, const SecantOrder& order,
                     std::optional<FiniteDifferenceSpec> fd = std::nullopt);

}  // namespace specgrad
