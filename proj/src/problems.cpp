//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace specgrad {

namespace {

// All formulas use 0-based indices; comments use the usual 1-based ones.

// sum_{i<n} (x_i^2 + x_n^2)^2 - 4 x_i + 3
Problem arwhead(std::size_t n) {
  Problem p{"arwhead", n, {}, {}, DenseVector(n, 1.0), {}};
  p.objective = [](const DenseVector& x) {
    const std::size_t n = x.size();
    const double xn2 = x[n - 1] * x[n - 1];
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double q = x[i] * x[i] + xn2;
      f += q * q - 4.0 * x[i] + 3.0;
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    const std::size_t n = x.size();
    const double xn = x[n - 1];
    DenseVector g(n);
    double gn = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double q = x[i] * x[i] + xn * xn;
      g[i] = 4.0 * q * x[i] - 4.0;
      gn += 4.0 * q * xn;
    }
    g[n - 1] = gn;
    return g;
  };
  return p;
}

// sum c (x_{2i} - x_{2i-1}^k)^2 + (1 - x_{2i-1})^2, k = 2 (Rosenbrock) or
// k = 3 (White-Holst).
Problem extended_valley(std::string name, std::size_t n, int power) {
  DenseVector start(n);
  for (std::size_t i = 0; i < n; i += 2) {
    start[i] = -1.2;
    start[i + 1] = 1.0;
  }
  Problem p{std::move(name), n, {}, {}, std::move(start), {}};
  constexpr double c = 100.0;
  p.objective = [power](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); i += 2) {
      const double a = x[i];
      const double r = x[i + 1] - std::pow(a, power);
      f += c * r * r + (1.0 - a) * (1.0 - a);
    }
    return f;
  };
  p.gradient = [power](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); i += 2) {
      const double a = x[i];
      const double r = x[i + 1] - std::pow(a, power);
      const double dr_da = -power * std::pow(a, power - 1);
      g[i] = 2.0 * c * r * dr_da - 2.0 * (1.0 - a);
      g[i + 1] = 2.0 * c * r;
    }
    return g;
  };
  return p;
}

// sum (1.5 - a(1-b))^2 + (2.25 - a(1-b^2))^2 + (2.625 - a(1-b^3))^2
Problem extended_beale(std::size_t n) {
  DenseVector start(n);
  for (std::size_t i = 0; i < n; i += 2) {
    start[i] = 1.0;
    start[i + 1] = 0.8;
  }
  Problem p{"extended_beale", n, {}, {}, std::move(start), {}};
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); i += 2) {
      const double a = x[i];
      const double b = x[i + 1];
      const double t1 = 1.5 - a * (1.0 - b);
      const double t2 = 2.25 - a * (1.0 - b * b);
      const double t3 = 2.625 - a * (1.0 - b * b * b);
      f += t1 * t1 + t2 * t2 + t3 * t3;
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); i += 2) {
      const double a = x[i];
      const double b = x[i + 1];
      const double t1 = 1.5 - a * (1.0 - b);
      const double t2 = 2.25 - a * (1.0 - b * b);
      const double t3 = 2.625 - a * (1.0 - b * b * b);
      g[i] = -2.0 * (t1 * (1.0 - b) + t2 * (1.0 - b * b) + t3 * (1.0 - b * b * b));
      g[i + 1] = 2.0 * a * (t1 + 2.0 * t2 * b + 3.0 * t3 * b * b);
    }
    return g;
  };
  return p;
}

// sum exp(x_i) - i x_i
Problem diagonal1(std::size_t n) {
  Problem p{"diagonal1", n, {}, {}, DenseVector(n, 1.0 / static_cast<double>(n)), {}};
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      f += std::exp(x[i]) - static_cast<double>(i + 1) * x[i];
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      g[i] = std::exp(x[i]) - static_cast<double>(i + 1);
    }
    return g;
  };
  return p;
}

// sum (i/10)(exp(x_i) - x_i)
Problem raydan1(std::size_t n) {
  Problem p{"raydan1", n, {}, {}, DenseVector(n, 1.0), {}};
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      f += static_cast<double>(i + 1) / 10.0 * (std::exp(x[i]) - x[i]);
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      g[i] = static_cast<double>(i + 1) / 10.0 * (std::exp(x[i]) - 1.0);
    }
    return g;
  };
  return p;
}

// sum_{i<n} sin(x_1 + x_i^2 - 1) + sin(x_n^2) / 2
Problem eg2(std::size_t n) {
  Problem p{"eg2", n, {}, {}, DenseVector(n, 1.0), {}};
  p.objective = [](const DenseVector& x) {
    const std::size_t n = x.size();
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) f += std::sin(x[0] + x[i] * x[i] - 1.0);
    return f + 0.5 * std::sin(x[n - 1] * x[n - 1]);
  };
  p.gradient = [](const DenseVector& x) {
    const std::size_t n = x.size();
    DenseVector g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double c = std::cos(x[0] + x[i] * x[i] - 1.0);
      g[0] += c;
      g[i] += 2.0 * x[i] * c;
    }
    g[n - 1] += x[n - 1] * std::cos(x[n - 1] * x[n - 1]);
    return g;
  };
  return p;
}

// sum_{i<n} (x_i^2 + x_{i+1}^2)^2 - 4 x_i + 3
Problem engval1(std::size_t n) {
  Problem p{"engval1", n, {}, {}, DenseVector(n, 2.0), {}};
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
      f += q * q - 4.0 * x[i] + 3.0;
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
      g[i] += 4.0 * q * x[i] - 4.0;
      g[i + 1] += 4.0 * q * x[i + 1];
    }
    return g;
  };
  return p;
}

// sum_{i<n} c (x_{i+1} - x_i + 1 - x_i^2)^2
Problem fletchcr(std::size_t n) {
  Problem p{"fletchcr", n, {}, {}, DenseVector(n, 0.0), {}};
  constexpr double c = 100.0;
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double r = x[i + 1] - x[i] + 1.0 - x[i] * x[i];
      f += c * r * r;
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double r = x[i + 1] - x[i] + 1.0 - x[i] * x[i];
      g[i + 1] += 2.0 * c * r;
      g[i] += 2.0 * c * r * (-1.0 - 2.0 * x[i]);
    }
    return g;
  };
  return p;
}

// (x_1 - x_2)^2 + sum_{i<=n-2} (x_i + x_{i+1} + x_n)^4 + (x_{n-1} + x_n)^2
Problem nondquar(std::size_t n) {
  DenseVector start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = (i % 2 == 0) ? 1.0 : -1.0;
  Problem p{"nondquar", n, {}, {}, std::move(start), {}};
  p.objective = [](const DenseVector& x) {
    const std::size_t n = x.size();
    const double xn = x[n - 1];
    double f = (x[0] - x[1]) * (x[0] - x[1]);
    for (std::size_t i = 0; i + 2 < n; ++i) {
      const double r = x[i] + x[i + 1] + xn;
      const double r2 = r * r;
      f += r2 * r2;
    }
    const double tail = x[n - 2] + xn;
    return f + tail * tail;
  };
  p.gradient = [](const DenseVector& x) {
    const std::size_t n = x.size();
    const double xn = x[n - 1];
    DenseVector g(n);
    g[0] += 2.0 * (x[0] - x[1]);
    g[1] -= 2.0 * (x[0] - x[1]);
    for (std::size_t i = 0; i + 2 < n; ++i) {
      const double r = x[i] + x[i + 1] + xn;
      const double dr = 4.0 * r * r * r;
      g[i] += dr;
      g[i + 1] += dr;
      g[n - 1] += dr;
    }
    const double tail = 2.0 * (x[n - 2] + xn);
    g[n - 2] += tail;
    g[n - 1] += tail;
    return g;
  };
  return p;
}

// sum (a^2 + b - 11)^2 + (a + b^2 - 7)^2
Problem extended_himmelblau(std::size_t n) {
  Problem p{"extended_himmelblau", n, {}, {}, DenseVector(n, 1.0), {}};
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); i += 2) {
      const double u = x[i] * x[i] + x[i + 1] - 11.0;
      const double v = x[i] + x[i + 1] * x[i + 1] - 7.0;
      f += u * u + v * v;
    }
    return f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); i += 2) {
      const double u = x[i] * x[i] + x[i + 1] - 11.0;
      const double v = x[i] + x[i + 1] * x[i + 1] - 7.0;
      g[i] = 4.0 * x[i] * u + 2.0 * v;
      g[i + 1] = 2.0 * u + 4.0 * x[i + 1] * v;
    }
    return g;
  };
  return p;
}

// 1/2 sum i x_i^2
Problem qf1(std::size_t n) {
  Problem p{"qf1", n, {}, {}, DenseVector(n, 1.0), static_cast<double>(n)};
  p.objective = [](const DenseVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      f += static_cast<double>(i + 1) * x[i] * x[i];
    }
    return 0.5 * f;
  };
  p.gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = static_cast<double>(i + 1) * x[i];
    return g;
  };
  return p;
}

std::vector<ProblemFamily> build_registry() {
  std::vector<ProblemFamily> r;
  r.push_back({"arwhead", "ARWHEAD", false, 2, arwhead});
  r.push_back({"extended_rosenbrock", "Extended Rosenbrock", true, 2,
               [](std::size_t n) { return extended_valley("extended_rosenbrock", n, 2); }});
  r.push_back({"extended_white_holst", "Extended White-Holst", true, 2,
               [](std::size_t n) { return extended_valley("extended_white_holst", n, 3); }});
  r.push_back({"extended_beale", "Extended Beale", true, 2, extended_beale});
  r.push_back({"diagonal1", "Diagonal 1", false, 1, diagonal1});
  r.push_back({"raydan1", "Raydan 1", false, 1, raydan1});
  r.push_back({"eg2", "EG2", false, 2, eg2});
  r.push_back({"engval1", "ENGVAL1", false, 2, engval1});
  r.push_back({"fletchcr", "FLETCHCR", false, 2, fletchcr});
  r.push_back({"nondquar", "NONDQUAR", false, 3, nondquar});
  r.push_back({"extended_himmelblau", "Extended Himmelblau", true, 2, extended_himmelblau});
  r.push_back({"qf1", "Quadratic QF1", false, 1, qf1});
  return r;
}

}  // namespace

const std::vector<ProblemFamily>& registry() {
  static const std::vector<ProblemFamily> families = build_registry();
  return families;
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& family : registry()) names.push_back(family.name);
  return names;
}

Problem make_problem(const std::string& name, std::size_t n) {
  const auto& families = registry();
  const auto it = std::find_if(families.begin(), families.end(),
                               [&](const ProblemFamily& f) { return f.name == name; });
  if (it == families.end()) throw LookupError("unknown problem '" + name + "'");
  if (n < it->min_dimension || (it->even_only && n % 2 != 0)) {
    std::ostringstream msg;
    msg << "problem '" << name << "' does not support dimension " << n;
    throw LookupError(msg.str());
  }
  return it->make(n);
}

Problem random_quadratic(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("random_quadratic: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> m(n * n);
  for (double& v : m) v = normal(rng);
  // A = M^T M / n + I, row-major.
  auto a = std::make_shared<std::vector<double>>(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += m[k * n + i] * m[k * n + j];
      (*a)[i * n + j] = sum / static_cast<double>(n) + (i == j ? 1.0 : 0.0);
    }
  }
  auto b = std::make_shared<DenseVector>(n);
  for (std::size_t i = 0; i < n; ++i) (*b)[i] = normal(rng);
  DenseVector start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = normal(rng);

  auto apply = [a, n](const DenseVector& x) {
    DenseVector ax(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += (*a)[i * n + j] * x[j];
      ax[i] = sum;
    }
    return ax;
  };

  // Power iteration for the largest eigenvalue of the SPD matrix A.
  DenseVector v(n, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    DenseVector w = apply(v);
    const double nw = norm2(w);
    const double next = dot(v, w) / squared_norm(v);
    v = scale(1.0 / nw, w);
    if (std::abs(next - lambda) <= 1e-15 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }

  Problem p;
  p.name = "random_quadratic";
  p.dimension = n;
  p.start = std::move(start);
  p.lipschitz_hint = lambda;
  p.objective = [apply, b](const DenseVector& x) {
    return 0.5 * dot(x, apply(x)) + dot(*b, x);
  };
  p.gradient = [apply, b](const DenseVector& x) {
    DenseVector g = apply(x);
    add_scaled(g, 1.0, *b);
    return g;
  };
  return p;
}

Problem power_sum(std::size_t n, int p) {
  if (n == 0 || p < 2) throw ArgumentError("power_sum: need n >= 1 and p >= 2");
  Problem prob{"power_sum_" + std::to_string(p), n, {}, {}, DenseVector(n, 1.0), {}};
  prob.objective = [p](const DenseVector& x) {
    double f = 0.0;
    for (double v : x) f += std::pow(v, p);
    return f;
  };
  prob.gradient = [p](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = p * std::pow(x[i], p - 1);
    return g;
  };
  return prob;
}

double InstrumentedOracle::eval_f(const DenseVector& x) {
  ++counters_.nf;
  const double f = problem_->objective(x);
  if (!std::isfinite(f)) {
    throw EvaluationError(problem_->name, x.values(), "non-finite objective");
  }
  return f;
}

DenseVector InstrumentedOracle::eval_g(const DenseVector& x) {
  ++counters_.ng;
  DenseVector g = problem_->gradient(x);
  if (g.size() != x.size()) {
    throw DimensionError(problem_->name + ": gradient length mismatch");
  }
  if (!g.all_finite()) {
    throw EvaluationError(problem_->name, x.values(), "non-finite gradient");
  }
  return g;
}

std::pair<double, DenseVector> InstrumentedOracle::eval_fg(const DenseVector& x) {
  double f = eval_f(x);
  return {f, eval_g(x)};
}

GradientCheckReport gradient_check(const Problem& problem,
                                   const std::vector<DenseVector>& points,
                                   double tol) {
  if (!(tol > 0.0)) throw ArgumentError("gradient_check: tol must be > 0");
  GradientCheckReport report;
  for (const DenseVector& x : points) {
    InstrumentedOracle oracle(problem);
    const DenseVector analytic = oracle.eval_g(x);
    const DenseVector numeric =
        fd_gradient(problem.objective, x, FiniteDifferenceSpec::scaled(x));
    const double err =
        norm_inf(subtract(analytic, numeric)) / (1.0 + norm_inf(analytic));
    report.relative_errors.push_back(err);
    report.worst = std::max(report.worst, err);
    if (!(err <= tol)) report.pass = false;
  }
  return report;
}

std::vector<DenseVector> perturbed_points(const Problem& problem,
                                          std::size_t count, std::uint64_t seed,
                                          double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::vector<DenseVector> points{problem.start};
  for (std::size_t k = 0; k < count; ++k) {
    DenseVector x = problem.start;
    for (double& v : x) v += unif(rng);
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace specgrad
