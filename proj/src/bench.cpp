//
// specgrad - spectral conjugate gradient methods and benchmarks
// SPDX-License-Identifier: Apache-2.0
//

#include "specgrad/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace specgrad {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw Error("not a number: '" + text + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& text) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(text, &pos);
  if (pos != text.size()) throw Error("not an integer: '" + text + "'");
  return static_cast<std::size_t>(v);
}

ordered_json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double json_double(const ordered_json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

double cost_of(const RunResult& r, Metric metric) {
  std::size_t c = 0;
  switch (metric) {
    case Metric::ni:
      c = r.ni;
      break;
    case Metric::nf:
      c = r.nf;
      break;
    case Metric::ng:
      c = r.ng;
      break;
  }
  // Ratios need positive costs; a zero-iteration run counts as one.
  return static_cast<double>(std::max<std::size_t>(c, 1));
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

// ----------------------------------------------------------------------------
// Suite
// ----------------------------------------------------------------------------

SolverSpec SolverSpec::parse(const std::string& text) {
  SolverSpec spec;
  spec.id = text;
  const auto colon = text.find(':');
  spec.method = parse_method(text.substr(0, colon));
  if (colon == std::string::npos) return spec;

  for (const std::string& option : split(text.substr(colon + 1), ':')) {
    const auto eq = option.find('=');
    if (eq == std::string::npos || option.substr(0, eq) != "m") {
      throw ArgumentError("unknown solver option '" + option + "' in '" + text + "'");
    }
    spec.order = SecantOrder::parse(option.substr(eq + 1));
  }
  return spec;
}

SolverConfig make_config(const SolverSpec& spec, const ConfigOverrides& overrides) {
  SolverConfig config = SolverConfig::defaults(spec.method, spec.order);
  if (overrides.epsilon) config.epsilon = *overrides.epsilon;
  if (overrides.max_iter) config.max_iter = *overrides.max_iter;
  if (overrides.eta) config.direction.eta = *overrides.eta;
  if (overrides.tau) config.direction.tau = *overrides.tau;
  config.validate();
  return config;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("SPECGRAD_WORKERS")) {
    try {
      const std::size_t n = parse_size(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const std::vector<SolverSpec>& solvers,
                      const std::vector<std::string>& problems,
                      const std::vector<std::size_t>& dims,
                      const ConfigOverrides& overrides, const SuiteOptions& options) {
  if (solvers.empty() || problems.empty() || dims.empty()) {
    throw ArgumentError("run_suite: solver, problem and dimension lists must be nonempty");
  }

  std::vector<SolverSpec> ordered_solvers = solvers;
  std::sort(ordered_solvers.begin(), ordered_solvers.end(),
            [](const SolverSpec& a, const SolverSpec& b) { return a.id < b.id; });
  ordered_solvers.erase(std::unique(ordered_solvers.begin(), ordered_solvers.end(),
                                    [](const SolverSpec& a, const SolverSpec& b) {
                                      return a.id == b.id;
                                    }),
                        ordered_solvers.end());
  const std::set<std::string> problem_set(problems.begin(), problems.end());
  const std::set<std::size_t> dim_set(dims.begin(), dims.end());

  // Instances are immutable and shared by every worker.
  std::vector<Problem> instances;
  for (const std::string& name : problem_set) {
    for (std::size_t n : dim_set) instances.push_back(make_problem(name, n));
  }
  std::vector<SolverConfig> configs;
  for (const SolverSpec& spec : ordered_solvers) configs.push_back(make_config(spec, overrides));

  struct Cell {
    std::size_t solver;
    std::size_t instance;
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < ordered_solvers.size(); ++s) {
    for (std::size_t p = 0; p < instances.size(); ++p) cells.push_back({s, p});
  }

  std::vector<ResultRow> rows(cells.size());
  std::vector<AuditReport> audits(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell cell = cells[i];
      const Problem& problem = instances[cell.instance];
      SolverConfig config = configs[cell.solver];
      StepAuditor auditor(problem.lipschitz_hint);
      if (options.audit) config.observer = auditor.observer();

      ResultRow& row = rows[i];
      row.solver = ordered_solvers[cell.solver].id;
      row.problem = problem.name;
      row.dim = problem.dimension;
      try {
        row.result = minimize(problem, config);
      } catch (const std::exception& e) {
        row.result.status = RunStatus::eval_error;
        row.result.f_final = std::numeric_limits<double>::quiet_NaN();
        row.result.gnorm_inf_final = std::numeric_limits<double>::quiet_NaN();
        row.result.message = e.what();
      }
      audits[i] = auditor.report();
    }
  };

  const std::size_t workers =
      std::min(options.workers ? options.workers : default_workers(), cells.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteReport report;
  report.table.rows = std::move(rows);
  for (const AuditReport& a : audits) report.audit.merge(a);
  return report;
}

std::vector<std::string> solver_ids(const ResultTable& table) {
  std::vector<std::string> ids;
  for (const ResultRow& row : table.rows) {
    if (std::find(ids.begin(), ids.end(), row.solver) == ids.end()) ids.push_back(row.solver);
  }
  return ids;
}

// ----------------------------------------------------------------------------
// Performance profiles
// ----------------------------------------------------------------------------

const char* to_string(Metric metric) {
  switch (metric) {
    case Metric::ni:
      return "NI";
    case Metric::nf:
      return "NF";
    case Metric::ng:
      return "NG";
  }
  return "??";
}

Metric parse_metric(const std::string& text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "ni") return Metric::ni;
  if (lower == "nf") return Metric::nf;
  if (lower == "ng") return Metric::ng;
  throw ArgumentError("unknown metric '" + text + "'");
}

double RatioTable::at(const std::string& solver, const ProblemKey& problem) const {
  const auto it = ratios.find({solver, problem});
  if (it == ratios.end()) throw LookupError("no ratio for solver '" + solver + "'");
  return it->second;
}

RatioTable performance_ratios(const ResultTable& table, Metric metric) {
  if (table.rows.empty()) throw ArgumentError("performance_ratios: empty table");

  RatioTable out;
  out.metric = metric;
  out.solvers = solver_ids(table);

  std::map<ProblemKey, std::map<std::string, const RunResult*>> by_problem;
  for (const ResultRow& row : table.rows) {
    by_problem[{row.problem, row.dim}][row.solver] = &row.result;
  }

  double max_ratio = 1.0;
  std::vector<std::pair<std::string, ProblemKey>> failed;
  for (const auto& [key, runs] : by_problem) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [solver, run] : runs) {
      if (run->status == RunStatus::converged) best = std::min(best, cost_of(*run, metric));
    }
    if (!std::isfinite(best)) {
      out.excluded.push_back(key);
      continue;
    }
    out.problems.push_back(key);
    for (const std::string& solver : out.solvers) {
      const auto it = runs.find(solver);
      if (it == runs.end() || it->second->status != RunStatus::converged) {
        failed.emplace_back(solver, key);
        continue;
      }
      const double r = cost_of(*it->second, metric) / best;
      out.ratios[{solver, key}] = r;
      max_ratio = std::max(max_ratio, r);
    }
  }
  out.r_fail = 2.0 * max_ratio;
  for (const auto& cell : failed) out.ratios[cell] = out.r_fail;
  return out;
}

std::vector<double> default_grid(double r_fail, std::size_t count) {
  if (count < 2 || !(r_fail > 1.0)) throw ArgumentError("default_grid: need count >= 2, r_fail > 1");
  std::vector<double> grid(count);
  const double top = std::log(r_fail);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(top * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  grid.front() = 1.0;
  grid.back() = r_fail;
  return grid;
}

std::vector<ProfileCurve> performance_profile(const RatioTable& ratios,
                                              const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 1.0 || !std::is_sorted(grid.begin(), grid.end())) {
    throw ArgumentError("performance_profile: grid must be ascending and start at 1");
  }
  const double n_p = static_cast<double>(ratios.problems.size());
  std::vector<ProfileCurve> curves;
  for (const std::string& solver : ratios.solvers) {
    ProfileCurve curve{solver, ratios.metric, {}};
    for (double tau : grid) {
      std::size_t count = 0;
      for (const ProblemKey& p : ratios.problems) {
        if (ratios.at(solver, p) <= tau) ++count;
      }
      curve.points.emplace_back(tau, n_p > 0 ? static_cast<double>(count) / n_p : 0.0);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

// ----------------------------------------------------------------------------
// Serialization
// ----------------------------------------------------------------------------

std::string results_csv(const ResultTable& table) {
  std::ostringstream out;
  out << "solver,problem,dim,status,ni,nf,ng,f_final,gnorm_inf\n";
  for (const ResultRow& row : table.rows) {
    const RunResult& r = row.result;
    out << row.solver << ',' << row.problem << ',' << row.dim << ',' << to_string(r.status)
        << ',' << r.ni << ',' << r.nf << ',' << r.ng << ',' << format_double(r.f_final) << ','
        << format_double(r.gnorm_inf_final) << '\n';
  }
  return out.str();
}

std::string profile_csv(const std::vector<ProfileCurve>& curves) {
  std::ostringstream out;
  out << "tau";
  for (const ProfileCurve& c : curves) out << ',' << c.solver;
  out << '\n';
  if (curves.empty()) return out.str();
  for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
    out << format_double(curves.front().points[i].first);
    for (const ProfileCurve& c : curves) out << ',' << format_double(c.points.at(i).second);
    out << '\n';
  }
  return out.str();
}

namespace {

std::map<Metric, std::vector<ProfileCurve>> group_by_metric(
    const std::vector<ProfileCurve>& curves) {
  std::map<Metric, std::vector<ProfileCurve>> grouped;
  for (const ProfileCurve& c : curves) grouped[c.metric].push_back(c);
  return grouped;
}

ordered_json results_json(const ResultTable& table) {
  ordered_json rows = ordered_json::array();
  for (const ResultRow& row : table.rows) {
    const RunResult& r = row.result;
    rows.push_back({{"solver", row.solver},
                    {"problem", row.problem},
                    {"dim", row.dim},
                    {"status", to_string(r.status)},
                    {"ni", r.ni},
                    {"nf", r.nf},
                    {"ng", r.ng},
                    {"f_final", number_or_string(r.f_final)},
                    {"gnorm_inf", number_or_string(r.gnorm_inf_final)}});
  }
  return rows;
}

ordered_json profiles_json(const std::vector<ProfileCurve>& curves) {
  ordered_json profiles = ordered_json::object();
  for (const auto& [metric, group] : group_by_metric(curves)) {
    ordered_json entry;
    ordered_json tau = ordered_json::array();
    for (const auto& point : group.front().points) tau.push_back(point.first);
    entry["tau"] = std::move(tau);
    ordered_json solvers = ordered_json::object();
    for (const ProfileCurve& c : group) {
      ordered_json values = ordered_json::array();
      for (const auto& point : c.points) values.push_back(point.second);
      solvers[c.solver] = std::move(values);
    }
    entry["solvers"] = std::move(solvers);
    profiles[to_string(metric)] = std::move(entry);
  }
  return profiles;
}

ResultRow row_from_fields(const std::vector<std::string>& f) {
  ResultRow row;
  row.solver = f[0];
  row.problem = f[1];
  row.dim = parse_size(f[2]);
  row.result.status = parse_run_status(f[3]);
  row.result.ni = parse_size(f[4]);
  row.result.nf = parse_size(f[5]);
  row.result.ng = parse_size(f[6]);
  row.result.f_final = parse_double(f[7]);
  row.result.gnorm_inf_final = parse_double(f[8]);
  return row;
}

}  // namespace

void emit(const ResultTable& table, const std::vector<ProfileCurve>& curves,
          OutputFormat format, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());

  if (format == OutputFormat::json) {
    ordered_json doc;
    doc["results"] = results_json(table);
    doc["profiles"] = profiles_json(curves);
    write_file(dir / "results.json", doc.dump(2) + "\n");
    return;
  }

  write_file(dir / "results.csv", results_csv(table));
  if (curves.empty()) {
    for (Metric m : {Metric::ni, Metric::nf, Metric::ng}) {
      write_file(dir / (std::string("profile_") + to_string(m) + ".csv"), profile_csv({}));
    }
    return;
  }
  for (const auto& [metric, group] : group_by_metric(curves)) {
    write_file(dir / (std::string("profile_") + to_string(metric) + ".csv"), profile_csv(group));
  }
}

ResultTable load_results_csv(const std::filesystem::path& file) {
  std::istringstream in(read_file(file));
  std::string line;
  if (!std::getline(in, line) || line != "solver,problem,dim,status,ni,nf,ng,f_final,gnorm_inf") {
    throw Error("'" + file.string() + "': unexpected results header");
  }
  ResultTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 9) {
      throw Error("'" + file.string() + "' line " + std::to_string(lineno) +
                  ": expected 9 fields");
    }
    table.rows.push_back(row_from_fields(fields));
  }
  return table;
}

ResultTable load_results_json(const std::filesystem::path& file) {
  const ordered_json doc = ordered_json::parse(read_file(file));
  ResultTable table;
  for (const auto& j : doc.at("results")) {
    ResultRow row;
    row.solver = j.at("solver").get<std::string>();
    row.problem = j.at("problem").get<std::string>();
    row.dim = j.at("dim").get<std::size_t>();
    row.result.status = parse_run_status(j.at("status").get<std::string>());
    row.result.ni = j.at("ni").get<std::size_t>();
    row.result.nf = j.at("nf").get<std::size_t>();
    row.result.ng = j.at("ng").get<std::size_t>();
    row.result.f_final = json_double(j.at("f_final"));
    row.result.gnorm_inf_final = json_double(j.at("gnorm_inf"));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace specgrad
