//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specgrad/bench.hpp"

using namespace specgrad;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    v.pass = false;
    v.detail += " (over time budget)";
  }
  if (!v.pass) ++failures;
  std::printf("[%s] %d %s: %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", id, title,
              v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<SolverSpec>& four_solvers() {
  static const std::vector<SolverSpec> s{SolverSpec::parse("scgmmwls:m=3"),
                                         SolverSpec::parse("dk"), SolverSpec::parse("jian"),
                                         SolverSpec::parse("m2:m=3")};
  return s;
}

SuiteReport full_suite() {
  SuiteOptions opts;
  opts.audit = true;
  return run_suite(four_solvers(), problem_names(), {100}, {}, opts);
}

Verdict gradient_correctness() {
  std::size_t checks = 0, failed = 0;
  double worst = 0;
  for (const std::string& name : problem_names()) {
    for (std::size_t n : {100, 1000}) {
      const Problem p = make_problem(name, n);
      const GradientCheckReport r = gradient_check(p, perturbed_points(p, 5), 1e-6);
      checks += r.relative_errors.size();
      worst = std::max(worst, r.worst);
      if (!r.pass) ++failed;
    }
  }
  return {failed == 0, std::to_string(checks) + " points, " + std::to_string(failed) +
                           " failing instances, worst rel err " + fmt("%.2e", worst)};
}

Verdict quadratic_mu() {
  std::vector<Problem> problems{make_problem("qf1", 20)};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) problems.push_back(random_quadratic(20, seed));
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> log_scale(-3.0, 1.0);
  double worst = 0;
  std::size_t bad = 0, steps = 0;
  for (const Problem& p : problems) {
    const std::vector<DenseVector> bases = perturbed_points(p, 4, 77, 1.0);
    for (int i = 0; i < 100; ++i) {
      const DenseVector& x = bases[i % bases.size()];
      DenseVector s(p.dimension);
      const double scale_s = std::pow(10.0, log_scale(rng));
      for (double& v : s) v = scale_s * normal(rng);
      const DenseVector x1 = axpy(1.0, s, x);
      const double f0 = p.objective(x), f1 = p.objective(x1);
      const double m = mu(f0, f1, p.gradient(x), p.gradient(x1), s);
      const double rel = std::abs(m) / (1 + std::abs(f0) + std::abs(f1));
      worst = std::max(worst, rel);
      if (rel > 1e-9) ++bad;
      ++steps;
    }
  }
  return {bad == 0, std::to_string(steps) + " steps on " + std::to_string(problems.size()) +
                        " quadratics, worst |mu|/(1+|f_k|+|f_k+1|) " + fmt("%.2e", worst)};
}

Verdict hessian_ordering() {
  const Problem p = power_sum(5, 3);
  DenseVector u{0.5, 0.3, -0.2, 0.6, 0.4};
  u = scale(1.0 / norm2(u), u);
  double u3 = 0;
  for (double v : u) u3 += v * v * v;
  const double h = 1e-3;
  const DenseVector x1{1.0, 1.01, 0.99, 1.02, 0.98};
  const DenseVector s = scale(h, u);

  bool pass = true;
  std::string detail;
  const double pred_inf = 2.0 * u3;
  for (const SecantOrder& m :
       {SecantOrder::finite(4), SecantOrder::finite(5), SecantOrder::infinity()}) {
    const double pred = m.is_infinite() ? pred_inf : (m.value() - 3.0) / (3.0 * (m.value() - 2.0)) * 6.0 * u3;
    const double measured = hessian_error(p, x1, s, m) / (h * h * h);
    const double rel = std::abs(measured - pred) / std::abs(pred);
    pass = pass && rel <= 0.05;
    detail += "m=" + m.to_string() + fmt(" %.4f vs %.4f; ", measured, pred);
  }
  const double m3 = hessian_error(p, x1, s, SecantOrder::finite(3)) / (h * h * h);
  pass = pass && std::abs(m3) <= 0.05 * std::abs(pred_inf) &&
         std::abs(m3) <= 0.05 * std::abs(6.0 * u3) / 6.0;
  detail += fmt("m=3 %.2e (bound %.2e)", m3, 0.05 * std::abs(u3));
  return {pass, detail};
}

Verdict wolfe_audit(const SuiteReport& rep) {
  const AuditReport& a = rep.audit;
  const std::size_t v = a.armijo_violations + a.curvature_violations +
                        a.secant_curvature_violations + a.t_bound_violations;
  std::string detail = std::to_string(a.steps) + " steps; armijo " +
                       std::to_string(a.armijo_violations) + ", curvature " +
                       std::to_string(a.curvature_violations) + ", d^T z " +
                       std::to_string(a.secant_curvature_violations) + ", t bounds " +
                       std::to_string(a.t_bound_violations);
  for (const std::string& m : a.messages) detail += "\n    " + m;
  return {v == 0 && a.steps > 0, detail};
}

Verdict sufficient_descent(const SuiteReport& rep) {
  const AuditReport& a = rep.audit;
  return {a.descent_violations == 0 && a.theta_violations == 0,
          "descent " + std::to_string(a.descent_violations) + ", theta " +
              std::to_string(a.theta_violations) + " violations"};
}

Verdict convergence(const SuiteReport& rep, const fs::path& out) {
  std::size_t total = 0, ok = 0;
  std::string failed;
  for (const ResultRow& r : rep.table.rows) {
    if (r.solver != "scgmmwls:m=3") continue;
    ++total;
    if (r.result.status == RunStatus::converged) {
      ++ok;
    } else {
      failed += " " + r.problem + "(" + to_string(r.result.status) + ")";
    }
  }
  std::vector<ProfileCurve> curves;
  double rho1 = 0;
  for (Metric m : {Metric::ni, Metric::nf, Metric::ng}) {
    const RatioTable ratios = performance_ratios(rep.table, m);
    const auto part = performance_profile(ratios, default_grid(ratios.r_fail));
    if (m == Metric::ni) {
      for (const ProfileCurve& c : part) {
        if (c.solver == "scgmmwls:m=3") rho1 = c.points.front().second;
      }
    }
    curves.insert(curves.end(), part.begin(), part.end());
  }
  emit(rep.table, curves, OutputFormat::csv, out);
  emit(rep.table, curves, OutputFormat::json, out);
  const bool files = fs::exists(out / "profile_NI.csv") && fs::exists(out / "profile_NF.csv") &&
                     fs::exists(out / "profile_NG.csv");
  std::string detail = std::to_string(ok) + "/" + std::to_string(total) + " converged" +
                       (failed.empty() ? "" : ";" + failed) +
                       fmt("; rho_NI(1) = %.3f (informational, reference ~0.85)", rho1);
  return {files && total > 0 && ok * 10 >= total * 9, detail};
}

Verdict mu_sign() {
  const auto arw = mu_sign_trace(make_problem("arwhead", 1000),
                                 SolverConfig::defaults(Method::scgmmwls), 24);
  if (arw.empty()) return {false, "no ARWHEAD iterations"};
  const double mu0 = arw.front().second;
  const Problem q = make_problem("qf1", 100);
  const auto qt = mu_sign_trace(q, SolverConfig::defaults(Method::scgmmwls), 100000);
  double worst = 0;
  for (const auto& [k, m] : qt) worst = std::max(worst, std::abs(m));
  const double scale = 1e-9 * (1 + q.objective(q.start));
  std::string detail = fmt("ARWHEAD mu_0 = %.4e", mu0) +
                       (std::abs(mu0) >= 1e3 ? " (|mu_0| >= 1e3)" : " (|mu_0| < 1e3, informational)") +
                       fmt("; QF1 max |mu_k| = %.2e over ", worst) + std::to_string(qt.size()) +
                       " steps";
  return {mu0 < 0 && worst <= scale, detail};
}

Verdict dolan_more_oracle() {
  auto row = [](const char* s, const char* p, std::size_t ni) {
    RunResult r;
    r.status = RunStatus::converged;
    r.ni = ni;
    return ResultRow{s, p, 1, r};
  };
  const ResultTable t{{row("A", "p1", 10), row("A", "p2", 20), row("B", "p1", 15),
                       row("B", "p2", 15)}};
  const RatioTable r = performance_ratios(t, Metric::ni);
  const bool ratios = r.at("A", {"p1", 1}) == 1.0 && r.at("A", {"p2", 1}) == 20.0 / 15.0 &&
                      r.at("B", {"p1", 1}) == 1.5 && r.at("B", {"p2", 1}) == 1.0;
  const auto c = performance_profile(r, {1.0, 1.4});
  using P = std::vector<std::pair<double, double>>;
  const bool profile = c.size() == 2 && c[0].points == P{{1.0, 0.5}, {1.4, 1.0}} &&
                       c[1].points == P{{1.0, 0.5}, {1.4, 0.5}};
  return {ratios && profile, std::string("ratios ") + (ratios ? "exact" : "WRONG") +
                                 ", profile points " + (profile ? "exact" : "WRONG")};
}

Verdict determinism(const SuiteReport& first, const fs::path& a, const fs::path& b) {
  const SuiteReport second = full_suite();
  emit(first.table, {}, OutputFormat::csv, a);
  emit(second.table, {}, OutputFormat::csv, b);
  const std::string x = slurp(a / "results.csv");
  const std::string y = slurp(b / "results.csv");
  return {!x.empty() && x == y,
          std::to_string(first.table.rows.size()) + " rows, " + std::to_string(x.size()) +
              " bytes, " + (x == y ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  fs::create_directories(out);

  report(1, "gradient correctness", 10, gradient_correctness);
  report(2, "quadratic exactness of mu", 5, quadratic_mu);
  report(3, "secant family error ordering", 5, hessian_ordering);

  SuiteReport suite;
  report(4, "Wolfe predicate audit", 0, [&] {
    suite = full_suite();
    return wolfe_audit(suite);
  });
  report(5, "sufficient descent and theta range", 0, [&] { return sufficient_descent(suite); });
  report(6, "convergence at n=100", 120, [&] { return convergence(suite, out / "suite"); });
  report(7, "mu sign behaviour", 0, mu_sign);
  report(8, "performance profile oracle", 0, dolan_more_oracle);
  report(9, "determinism", 0,
         [&] { return determinism(suite, out / "run_a", out / "run_b"); });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
