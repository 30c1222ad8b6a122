//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>

#include "specgrad/numkit.hpp"
#include "specgrad/secant.hpp"

namespace specgrad {

enum class Method { scgmmwls, dk, jian, m2 };

const char* to_string(Method method);
/// Throws ArgumentError on an unknown name.
Method parse_method(const std::string& name);

/// d^T z vanished relative to |d||z|.
class DegenerateCurvatureError : public Error {
 public:
  using Error::Error;
};

/// g_{k+1}^T z vanished; the spectral quotient is undefined.
class DegenerateSpectralError : public Error {
 public:
  using Error::Error;
};

struct DirectionParams {
  /// Descent margin: g^T d <= -eta |g|^2.
  double eta = 1e-3;
  /// Upper end of the admissible spectral interval [1/4 + eta, tau].
  double tau = 10.0;
  Method method = Method::scgmmwls;
  SecantParams secant;

  void validate() const;
  double theta_lower() const noexcept { return 0.25 + eta; }
};

struct DirectionDiag {
  double beta = 0.0;
  double theta = 1.0;
  /// theta fell outside the admissible interval and was replaced by 1.
  bool truncated_theta = false;
  /// The lower truncation branch g_k^T d_k / |d_k|^2 won the max.
  bool truncated_beta = false;
  /// Direction reset to -g.
  bool restart = false;
};

struct Direction {
  DenseVector d;
  DirectionDiag diag;
};

/// State carried over from the step that produced x_{k+1}.
struct PreviousStep {
  const DenseVector& d;  ///< d_k
  const DenseVector& s;  ///< x_{k+1} - x_k
  const DenseVector& g;  ///< g_k
};

struct BetaM {
  double value = 0.0;
  double lower = 0.0;  ///< conjugacy branch built on z
  double upper = 0.0;  ///< g_k^T d_k / |d_k|^2
  bool truncated = false;
};

/// max{ g+^T z/(d^T z) - |z|^2 (g+^T d)/(d^T z)^2 , g_k^T d/|d|^2 }.
/// Throws DegenerateCurvatureError when |d^T z| <= 1e-300 |d||z| or d = 0.
BetaM beta_M(const DenseVector& g_k1, const DenseVector& g_k, const DenseVector& d,
             const DenseVector& z);

/// (s^T g+ + beta d^T z) / (g+^T z). Throws DegenerateSpectralError when the
/// denominator vanishes or the quotient is not finite.
double theta_tilde(const DenseVector& g_k1, const DenseVector& s, const DenseVector& d,
                   const DenseVector& z, double beta);

/// Identity on [1/4 + eta, tau], 1 elsewhere (including NaN).
double theta_bar(double theta_t, const DirectionParams& params);

Direction next_direction_scgmmwls(const DenseVector& g_k1, const PreviousStep& prev,
                                  const SecantData& secant,
                                  const DirectionParams& params);

/// Dai-Kou member with tau_k = s^T y / |s|^2; theta fixed at 1.
Direction next_direction_dk(const DenseVector& g_k1, const PreviousStep& prev,
                            const DenseVector& y, const DirectionParams& params);

/// Jian's spectral CG. Uses -theta g+ and reads the inner denominator of the
/// spectral quotient as d^T y.
Direction next_direction_jian(const DenseVector& g_k1, const PreviousStep& prev,
                              const DenseVector& y, const DirectionParams& params);

/// SCGMMWLS formulas with z replaced by v = y + m/(m-2) max(mu,0)/|s|^2 s.
Direction next_direction_m2(const DenseVector& g_k1, const PreviousStep& prev,
                            const DenseVector& y, double mu,
                            const DirectionParams& params);

/// Dispatches on params.method.
Direction next_direction(const DenseVector& g_k1, const PreviousStep& prev,
                         const SecantData& secant, const DirectionParams& params);

}  // namespace specgrad
