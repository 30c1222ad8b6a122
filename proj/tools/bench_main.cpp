//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specgrad/bench.hpp"

namespace fs = std::filesystem;
using namespace specgrad;

namespace {

std::vector<std::string> expand_problems(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const std::string& name : names) {
    if (name == "all") {
      for (const std::string& n : problem_names()) out.push_back(n);
    } else {
      out.push_back(name);
    }
  }
  return out;
}

std::vector<ProfileCurve> all_profiles(const ResultTable& table, std::size_t points) {
  std::vector<ProfileCurve> curves;
  for (Metric m : {Metric::ni, Metric::nf, Metric::ng}) {
    const RatioTable ratios = performance_ratios(table, m);
    auto part = performance_profile(ratios, default_grid(ratios.r_fail, points));
    curves.insert(curves.end(), part.begin(), part.end());
  }
  return curves;
}

void write_excluded(const RatioTable& ratios, const fs::path& dir) {
  std::ofstream out(dir / (std::string("excluded_") + to_string(ratios.metric) + ".csv"));
  out << "problem,dim\n";
  for (const auto& [name, dim] : ratios.excluded) out << name << ',' << dim << '\n';
}

char fmt_buf[64];
const char* sci(double v) {
  std::snprintf(fmt_buf, sizeof fmt_buf, "%.3e", v);
  return fmt_buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral conjugate gradient benchmark harness"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run solvers over the problem suite");
  std::vector<std::string> solver_args{"scgmmwls:m=3", "dk", "jian", "m2:m=3"};
  std::vector<std::string> problem_args{"all"};
  std::vector<std::size_t> dims{100};
  ConfigOverrides overrides;
  double eps = 1e-8;
  std::size_t max_iter = 10000;
  std::string out_dir = "results";
  std::size_t workers = 0;
  std::size_t grid_points = 200;
  bool audit = false;
  run->add_option("--solvers", solver_args, "Solver ids, e.g. scgmmwls:m=3,dk,jian,m2:m=3")
      ->delimiter(',');
  run->add_option("--problems", problem_args, "Problem names or 'all'")->delimiter(',');
  run->add_option("--dims", dims, "Dimensions")->delimiter(',');
  run->add_option("--eps", eps, "Gradient tolerance (inf-norm)");
  run->add_option("--max-iter", max_iter, "Iteration limit");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Worker threads (default SPECGRAD_WORKERS)");
  run->add_option("--grid-points", grid_points, "Points on the tau grid");
  run->add_flag("--audit", audit, "Re-check every accepted step");

  // profile
  auto* profile = app.add_subcommand("profile", "Performance profile from stored results");
  std::string metric_arg = "ni";
  std::string in_dir = "results";
  std::string profile_out = "profiles";
  profile->add_option("--metric", metric_arg, "ni | nf | ng");
  profile->add_option("--in", in_dir, "Directory holding results.csv");
  profile->add_option("--out", profile_out, "Output directory");
  profile->add_option("--grid-points", grid_points, "Points on the tau grid");

  // trace
  auto* trace = app.add_subcommand("trace", "Per-iteration mu_k table for one run");
  std::string trace_problem = "arwhead";
  std::size_t trace_dim = 1000;
  std::string trace_solver = "scgmmwls:m=3";
  std::size_t trace_iters = 24;
  trace->add_option("--problem", trace_problem, "Problem name");
  trace->add_option("--dim", trace_dim, "Dimension");
  trace->add_option("--solver", trace_solver, "Solver id");
  trace->add_option("--iters", trace_iters, "Number of iterations to print");

  auto* list = app.add_subcommand("list", "List registered problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      overrides.epsilon = eps;
      overrides.max_iter = max_iter;
      std::vector<SolverSpec> solvers;
      for (const std::string& s : solver_args) solvers.push_back(SolverSpec::parse(s));
      SuiteOptions options;
      options.workers = workers;
      options.audit = audit;
      const SuiteReport report =
          run_suite(solvers, expand_problems(problem_args), dims, overrides, options);

      const std::vector<ProfileCurve> curves = all_profiles(report.table, grid_points);
      emit(report.table, curves, OutputFormat::csv, out_dir);
      emit(report.table, curves, OutputFormat::json, out_dir);

      bool eval_error = false;
      for (const ResultRow& row : report.table.rows) {
        const RunResult& r = row.result;
        eval_error = eval_error || r.status == RunStatus::eval_error;
        std::printf("%-16s %-22s %6zu %-18s ni=%-6zu nf=%-6zu ng=%-6zu |g|=%s\n",
                    row.solver.c_str(), row.problem.c_str(), row.dim, to_string(r.status),
                    r.ni, r.nf, r.ng, sci(r.gnorm_inf_final));
      }
      const RatioTable ni = performance_ratios(report.table, Metric::ni);
      for (const ProfileCurve& c : performance_profile(ni, {1.0})) {
        std::printf("rho_NI(1) %-16s %.3f\n", c.solver.c_str(), c.points.front().second);
      }
      if (audit) {
        const AuditReport& a = report.audit;
        std::fprintf(stderr,
                     "audit: steps=%zu armijo=%zu curvature=%zu dz=%zu t_bound=%zu "
                     "descent=%zu theta=%zu\n",
                     a.steps, a.armijo_violations, a.curvature_violations,
                     a.secant_curvature_violations, a.t_bound_violations,
                     a.descent_violations, a.theta_violations);
        for (const std::string& m : a.messages) std::fprintf(stderr, "  %s\n", m.c_str());
      }
      return eval_error ? 1 : 0;
    }

    if (profile->parsed()) {
      const Metric metric = parse_metric(metric_arg);
      const ResultTable table = load_results_csv(fs::path(in_dir) / "results.csv");
      const RatioTable ratios = performance_ratios(table, metric);
      const auto curves = performance_profile(ratios, default_grid(ratios.r_fail, grid_points));
      emit(table, curves, OutputFormat::csv, profile_out);
      emit(table, curves, OutputFormat::json, profile_out);
      write_excluded(ratios, profile_out);
      for (const ProfileCurve& c : curves) {
        std::printf("rho_%s(1) %-16s %.3f\n", to_string(metric), c.solver.c_str(),
                    c.points.front().second);
      }
      return 0;
    }

    if (trace->parsed()) {
      const SolverSpec spec = SolverSpec::parse(trace_solver);
      const Problem problem = make_problem(trace_problem, trace_dim);
      SolverConfig config = make_config(spec, {});
      config.trace_level = TraceLevel::full;
      const RunResult result = minimize(problem, config);
      std::printf("k,mu,sign,t,alpha,f,gnorm_inf,beta,theta,restart\n");
      std::size_t printed = 0;
      for (const IterationRecord& rec : *result.trace) {
        if (printed++ >= trace_iters) break;
        std::printf("%zu,%.3e,%c,%.3e,%.3e,%.6e,%.3e,%.3e,%.6f,%d\n", rec.k, rec.mu,
                    rec.mu > 0 ? '+' : (rec.mu < 0 ? '-' : '0'), rec.t, rec.alpha, rec.f,
                    rec.gnorm_inf, rec.beta, rec.theta, rec.restart ? 1 : 0);
      }
      std::fprintf(stderr, "status=%s ni=%zu nf=%zu ng=%zu\n", to_string(result.status),
                   result.ni, result.nf, result.ng);
      return result.status == RunStatus::eval_error ? 1 : 0;
    }

    if (list->parsed()) {
      for (const ProblemFamily& f : registry()) {
        std::printf("%-22s %s%s\n", f.name.c_str(), f.description.c_str(),
                    f.even_only ? " (even n)" : "");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bench: %s\n", e.what());
    return 2;
  }
  return 0;
}
