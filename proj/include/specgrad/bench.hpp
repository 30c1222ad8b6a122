//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specgrad/solver.hpp"

namespace specgrad {

/// A solver as named on the command line: "scgmmwls:m=3", "dk", "m2:m=inf".
struct SolverSpec {
  std::string id;
  Method method = Method::scgmmwls;
  SecantOrder order = SecantOrder::finite(3);

  static SolverSpec parse(const std::string& text);
};

struct ConfigOverrides {
  std::optional<double> epsilon;
  std::optional<std::size_t> max_iter;
  std::optional<double> eta;
  std::optional<double> tau;
};

SolverConfig make_config(const SolverSpec& spec, const ConfigOverrides& overrides);

struct ResultRow {
  std::string solver;
  std::string problem;
  std::size_t dim = 0;
  RunResult result;
};

/// At most one row per (solver, problem, dim); failed runs are kept.
struct ResultTable {
  std::vector<ResultRow> rows;
};

struct SuiteOptions {
  /// 0 picks SPECGRAD_WORKERS, else the hardware concurrency.
  std::size_t workers = 0;
  /// Attach a StepAuditor to every run and collect its report.
  bool audit = false;
};

struct SuiteReport {
  ResultTable table;
  AuditReport audit;
};

/// Every (solver, problem, dim) cell, rows ordered by solver id, problem name
/// and dimension. Unknown problems or unsupported dimensions throw
/// LookupError before any run starts; run failures are recorded as rows.
SuiteReport run_suite(const std::vector<SolverSpec>& solvers,
                      const std::vector<std::string>& problems,
                      const std::vector<std::size_t>& dims,
                      const ConfigOverrides& overrides = {},
                      const SuiteOptions& options = {});

/// Worker count from SPECGRAD_WORKERS, falling back to hardware concurrency.
std::size_t default_workers();

// ----------------------------------------------------------------------------
// Performance profiles
// ----------------------------------------------------------------------------

enum class Metric { ni, nf, ng };

/// "NI", "NF", "NG".
const char* to_string(Metric metric);
/// Case-insensitive "ni" / "nf" / "ng".
Metric parse_metric(const std::string& text);

/// (problem name, dimension)
using ProblemKey = std::pair<std::string, std::size_t>;

struct RatioTable {
  Metric metric = Metric::ni;
  std::vector<std::string> solvers;
  /// Problems with at least one converged run.
  std::vector<ProblemKey> problems;
  /// Problems where every solver failed; left out of n_p.
  std::vector<ProblemKey> excluded;
  std::map<std::pair<std::string, ProblemKey>, double> ratios;
  /// Ratio assigned to failed runs: twice the largest finite ratio.
  double r_fail = 2.0;

  double at(const std::string& solver, const ProblemKey& problem) const;
};

/// r_{p,s} = cost_{p,s} / min_s cost_{p,s} over converged runs.
RatioTable performance_ratios(const ResultTable& table, Metric metric);

struct ProfileCurve {
  std::string solver;
  Metric metric = Metric::ni;
  /// (tau, rho_s(tau)) on the shared grid.
  std::vector<std::pair<double, double>> points;
};

/// `count` log-spaced points on [1, r_fail]; endpoints exact.
std::vector<double> default_grid(double r_fail, std::size_t count = 200);

/// rho_s(tau) = |{p : r_{p,s} <= tau}| / n_p for every solver on `grid`.
std::vector<ProfileCurve> performance_profile(const RatioTable& ratios,
                                              const std::vector<double>& grid);

// ----------------------------------------------------------------------------
// Serialization
// ----------------------------------------------------------------------------

enum class OutputFormat { csv, json };

/// csv: results.csv plus profile_<METRIC>.csv for each metric in `curves`
/// (header-only NI/NF/NG files when `curves` is empty).
/// json: results.json holding the same data under "results" and "profiles".
/// Throws Error naming the path on I/O failure.
void emit(const ResultTable& table, const std::vector<ProfileCurve>& curves,
          OutputFormat format, const std::filesystem::path& dir);

/// The "tau,<solver...>" CSV layout for one metric.
std::string profile_csv(const std::vector<ProfileCurve>& curves);
std::string results_csv(const ResultTable& table);

ResultTable load_results_csv(const std::filesystem::path& file);
ResultTable load_results_json(const std::filesystem::path& file);

/// Solver ids in first-appearance order.
std::vector<std::string> solver_ids(const ResultTable& table);

}  // namespace specgrad
