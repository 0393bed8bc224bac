#include "tikhlab/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "tikhlab/nonlinearity.hpp"

namespace tikhlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  std::string path(const std::string& name) const { return (fs::path(dir_) / name).string(); }

  void write_text(const std::string& name, const std::string& text,
                  std::vector<std::string>& files) {
    std::ofstream out(path(name), std::ios::binary | std::ios::trunc);
    if (!out) throw NumericalError("cannot write " + path(name));
    out << text;
    files.push_back(path(name));
  }

  void write_csv(const std::string& name, const std::string& schema,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows,
                 std::vector<std::string>& files) {
    std::string text = "# schema: " + schema + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      text += (i ? "," : "") + columns[i];
    text += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + row[i];
      text += "\n";
    }
    write_text(name, text, files);
  }

  /// Two-column x/y plot data.
  void write_plot(const std::string& name,
                  const std::vector<std::pair<double, double>>& xy,
                  std::vector<std::string>& files) {
    std::string text;
    for (const auto& [x, y] : xy) text += fmt17(x) + " " + fmt17(y) + "\n";
    write_text(name, text, files);
  }

 private:
  std::string dir_;
};

std::vector<double> delta_grid_of(const TaskSpec& task) {
  return DistanceTable::log_grid(task.delta_min, task.delta_max, task.delta_count);
}

std::vector<double> r_grid_of(const TaskSpec& task) {
  return DistanceTable::log_grid(task.r_min, task.r_max, task.r_count);
}

NoiseProfile noise_profile_of(const TaskSpec& task) {
  if (task.noise_profile == "white") return NoiseProfile::white;
  if (task.noise_profile == "log_uniform") return NoiseProfile::log_uniform;
  throw ConfigError("config: unknown noise profile '" + task.noise_profile + "'");
}

DistanceTable distance_table_for(const std::string& source, const Problem& problem,
                                 const ExperimentConfig& cfg, bool* partial) {
  const TaskSpec& task = cfg.task;
  if (source == "dtilde") return asc_table(problem, r_grid_of(task));
  if (source == "davi") {
    AviParams params{task.beta1, task.beta2, task.gamma, task.kappa,
                     build_level_set_spec(problem, task)};
    SolverConfig scfg = build_solver_config(task);
    scfg.max_iterations = std::min(scfg.max_iterations, 500);
    AviTable t = avi_table(problem, params, r_grid_of(task), scfg);
    for (const AviResult& r : t.rows) *partial = *partial || r.budget_exhausted;
    return t.table;
  }
  if (source.rfind("powerlaw:", 0) == 0) {
    const auto colon = source.find(':');
    const auto second = source.find(':', colon + 1);
    if (second == std::string::npos)
      throw ConfigError("config: powerlaw source needs 'powerlaw:<a>:<b>'");
    double a = 0.0, b = 0.0;
    try {
      a = std::stod(source.substr(colon + 1, second - colon - 1));
      b = std::stod(source.substr(second + 1));
    } catch (const std::exception&) {
      throw ConfigError("config: bad powerlaw parameters in '" + source + "'");
    }
    if (!(a > 0.0 && b > 0.0))
      throw ConfigError("config: powerlaw parameters must be positive");
    const double gamma = task.gamma;
    return DistanceTable::sample(
        [&](double r) { return a * std::pow(r, -b * gamma); }, task.r_min, task.r_max,
        task.r_count);
  }
  throw ConfigError("config: unknown distance source '" + source + "'");
}

json points_to_json(const RateRun& run) {
  json rows = json::array();
  for (const RatePoint& pt : run.points) {
    rows.push_back({{"delta", pt.delta},
                    {"alpha", pt.alpha},
                    {"bregman_error", pt.bregman_error},
                    {"s_residual", pt.s_residual},
                    {"converged", pt.converged},
                    {"usable", pt.usable}});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Task bodies.  Each returns the summary JSON and appends files.
// ---------------------------------------------------------------------------

json run_solve(const ExperimentConfig& cfg, const Problem& problem, OutputDir& out,
               std::vector<std::string>& files, bool* partial) {
  const TaskSpec& task = cfg.task;
  const GridVector v_delta =
      make_noisy_data(problem.sim, problem.v_exact, task.delta, task.seed);
  const SolverConfig scfg = build_solver_config(task);
  const SolveResult sol = minimize_tikhonov(problem, v_delta, task.alpha, scfg);
  *partial = *partial || !sol.converged;

  const double breg = problem.bregman_to_true(sol.minimizer);
  GridVector fu = apply(problem.op, sol.minimizer);
  if (problem.sim.kind == Similarity::Kind::wasserstein_1d &&
      fu.kind != GridVector::Kind::probability_measure)
    fu = as_measure(fu);
  const double s_res = sim_value(problem.sim, fu, problem.v_exact);
  const LevelSetSpec spec = build_level_set_spec(problem, task);
  const bool member = level_set_member(problem, spec, sol.minimizer);
  const double certificate =
      std::pow(task.delta, problem.p) + task.alpha * problem.omega_true();
  const bool certificate_ok =
      sol.objective <= certificate + 1e-6 * std::max(1.0, certificate);

  out.write_csv("solve.csv", "solve-v1",
                {"delta", "alpha", "objective", "bregman_error", "s_residual", "iterations",
                 "converged", "level_set_member", "certificate_ok"},
                {{fmt17(task.delta), fmt17(task.alpha), fmt17(sol.objective), fmt17(breg),
                  fmt17(s_res), std::to_string(sol.iterations),
                  sol.converged ? "1" : "0", member ? "1" : "0", certificate_ok ? "1" : "0"}},
                files);

  std::vector<std::pair<double, double>> min_plot, true_plot;
  for (std::size_t i = 0; i < sol.minimizer.size(); ++i) {
    min_plot.emplace_back(sol.minimizer.position(i), sol.minimizer.values[i]);
    true_plot.emplace_back(problem.u_true.position(i), problem.u_true.values[i]);
  }
  out.write_plot("minimizer.dat", min_plot, files);
  out.write_plot("u_true.dat", true_plot, files);

  return json{{"objective", sol.objective},
              {"bregman_error", breg},
              {"s_residual", s_res},
              {"iterations", sol.iterations},
              {"converged", sol.converged},
              {"level_set_member", member},
              {"certificate_ok", certificate_ok}};
}

json run_dtilde(const ExperimentConfig& cfg, const Problem& problem, OutputDir& out,
                std::vector<std::string>& files) {
  const DistanceTable table = asc_table(problem, r_grid_of(cfg.task));
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<double, double>> plot;
  for (const auto& [r, v] : table.entries()) {
    rows.push_back({fmt17(r), fmt17(v)});
    plot.emplace_back(r, v);
  }
  out.write_csv("dtilde.csv", "dtilde-v1", {"r", "value"}, rows, files);
  out.write_plot("dtilde.dat", plot, files);
  return json{{"r_count", table.entries().size()},
              {"value_at_rmin", table.entries().front().second},
              {"value_at_rmax", table.entries().back().second},
              {"xi_norm", norm(problem.xi)}};
}

json run_davi(const ExperimentConfig& cfg, const Problem& problem, OutputDir& out,
              std::vector<std::string>& files, bool* partial) {
  const TaskSpec& task = cfg.task;
  AviParams params{task.beta1, task.beta2, task.gamma, task.kappa,
                   build_level_set_spec(problem, task)};
  SolverConfig scfg = build_solver_config(task);
  const AviTable t = avi_table(problem, params, r_grid_of(task), scfg);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<double, double>> plot;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double r = t.table.entries()[i].first;
    const AviResult& res = t.rows[i];
    *partial = *partial || res.budget_exhausted;
    rows.push_back({fmt17(r), fmt17(res.value), fmt17(res.s_residual), fmt17(res.bregman),
                    fmt17(res.xi_term)});
    plot.emplace_back(r, res.value);
  }
  out.write_csv("davi.csv", "davi-v1", {"r", "value", "s_residual", "bregman", "xi_term"},
                rows, files);
  out.write_plot("davi.dat", plot, files);
  return json{{"r_count", t.rows.size()},
              {"value_at_rmin", t.table.entries().front().second},
              {"value_at_rmax", t.table.entries().back().second}};
}

json run_rates(const ExperimentConfig& cfg, const Problem& problem, OutputDir& out,
               std::vector<std::string>& files, bool* partial) {
  const TaskSpec& task = cfg.task;
  const SolverConfig scfg = build_solver_config(task);

  AlphaRule rule;
  switch (task.alpha_rule) {
    case AlphaRuleKind::apriori:
      rule = [&](double d) {
        return choose_alpha_apriori(d, problem.p, task.rule_kappa, task.rule_c);
      };
      break;
    case AlphaRuleKind::fixed:
      rule = [&](double) { return task.fixed_alpha; };
      break;
    case AlphaRuleKind::phi: {
      const DistanceTable table =
          distance_table_for(task.distance_source, problem, cfg, partial);
      rule = [table, &problem, &task](double d) {
        return choose_alpha_phi(d, table, problem.p, task.kappa, task.gamma).alpha;
      };
      break;
    }
  }

  RateRun run;
  try {
    run = empirical_rate(problem, rule, delta_grid_of(task), scfg, noise_profile_of(task),
                         task.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::exception& e) {
    throw NumericalError(e.what());
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<double, double>> plot;
  for (const RatePoint& pt : run.points) {
    *partial = *partial || !pt.converged;
    rows.push_back({fmt17(pt.delta), fmt17(pt.alpha), fmt17(pt.bregman_error),
                    fmt17(pt.s_residual), pt.converged ? "1" : "0", pt.usable ? "1" : "0"});
    if (pt.usable) plot.emplace_back(pt.delta, pt.bregman_error);
  }
  out.write_csv("rates.csv", "rates-v1",
                {"delta", "alpha", "bregman_error", "s_residual", "converged", "usable"}, rows,
                files);
  out.write_plot("rates.dat", plot, files);

  return json{{"slope", run.fit.slope},
              {"intercept", run.fit.intercept},
              {"r_squared", run.fit.r_squared},
              {"points", points_to_json(run)}};
}

json run_choose_alpha(const ExperimentConfig& cfg, const Problem& problem, OutputDir& out,
                      std::vector<std::string>& files, bool* partial) {
  const TaskSpec& task = cfg.task;
  const DistanceTable table = distance_table_for(task.distance_source, problem, cfg, partial);
  if (!table.strictly_decreasing() || !table.strictly_positive())
    throw NumericalError(
        "choose-alpha: distance table is not strictly decreasing and positive");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<double, double>> plot;
  int failures = 0;
  for (double d : delta_grid_of(task)) {
    try {
      const AlphaPhiResult r = choose_alpha_phi(d, table, problem.p, task.kappa, task.gamma);
      const PredictedRate pr = predicted_rate(d, table, task.kappa, task.gamma);
      rows.push_back({fmt17(d), fmt17(r.alpha), fmt17(r.r_star), fmt17(r.phi_residual),
                      fmt17(pr.value), fmt17(pr.identity_residual)});
      plot.emplace_back(d, r.alpha);
    } catch (const std::exception&) {
      ++failures;
      *partial = true;
    }
  }
  if (rows.empty()) throw NumericalError("choose-alpha: no delta in the representable range");
  out.write_csv("choose_alpha.csv", "choose-alpha-v1",
                {"delta", "alpha", "r_star", "phi_residual", "predicted_rate",
                 "identity_residual"},
                rows, files);
  out.write_plot("alpha.dat", plot, files);
  return json{{"rows", rows.size()}, {"out_of_range", failures}};
}

json run_check_bounds(const ExperimentConfig& cfg, const Problem& problem, OutputDir& out,
                      std::vector<std::string>& files, bool* partial) {
  const TaskSpec& task = cfg.task;
  const LevelSetSpec spec = build_level_set_spec(problem, task);
  json summary;

  // Directional-derivative bound along -u_true (xi(direction) < 0 for the
  // shipped penalties at nonzero u_true).
  GridVector direction = scale(problem.u_true, -1.0 / std::max(norm(problem.u_true), 1e-300));
  const std::vector<double> t_grid{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const KappaBoundReport rep =
      kappa_upper_bound_check(problem, spec, direction, task.q, t_grid, task.kappa);
  std::vector<std::vector<std::string>> rows;
  for (const QuotientSample& s : rep.samples)
    rows.push_back({fmt17(s.t), fmt17(s.omega_quotient), fmt17(s.s_quotient)});
  out.write_csv("kappa_check.csv", "kappa-check-v1", {"t", "omega_quotient", "s_quotient"},
                rows, files);
  summary["kappa_check"] = {{"l_omega", rep.l_omega},
                            {"l_s", rep.l_s},
                            {"xi_direction", rep.xi_direction},
                            {"l_omega_matches_xi", rep.l_omega_matches_xi},
                            {"kappa_upper_bound", rep.kappa_upper_bound},
                            {"configured_kappa_violates", rep.configured_kappa_violates}};

  if (!problem.op.linear()) {
    const std::vector<GridVector> samples = sample_level_set(problem, spec, 40, task.seed);
    const NonlinearityDegreeFit fit = fit_nonlinearity_degree(problem, spec, samples);
    summary["degree_fit"] = {
        {"c1", fit.c1}, {"c2", fit.c2}, {"K", fit.K}, {"residual", fit.residual}};
  }

  // Maximal-rate diagnostic: d(Phi^{-1}(delta))/delta^q should not trend to 0.
  try {
    AviParams params{task.beta1, task.beta2, task.gamma, task.kappa, spec};
    SolverConfig scfg = build_solver_config(task);
    scfg.max_iterations = std::min(scfg.max_iterations, 300);
    const AviTable t = avi_table(problem, params, r_grid_of(task), scfg);
    for (const AviResult& r : t.rows) *partial = *partial || r.budget_exhausted;
    std::vector<double> ratios;
    std::vector<std::vector<std::string>> ratio_rows;
    for (double d : delta_grid_of(task)) {
      const PredictedRate pr = predicted_rate(d, t.table, task.kappa, task.gamma);
      const double ratio = pr.value / std::pow(d, task.q);
      ratios.push_back(ratio);
      ratio_rows.push_back({fmt17(d), fmt17(pr.value), fmt17(ratio)});
    }
    out.write_csv("app_kappa.csv", "app-kappa-v1", {"delta", "predicted_rate", "ratio"},
                  ratio_rows, files);
    const bool trending_to_zero = ratios.front() < 0.1 * ratios.back();
    summary["app_kappa_diag"] = {{"ratio_at_delta_min", ratios.front()},
                                 {"ratio_at_delta_max", ratios.back()},
                                 {"trending_to_zero", trending_to_zero}};
  } catch (const std::exception& e) {
    summary["app_kappa_diag"] = {{"skipped", e.what()}};
  }
  return summary;
}

}  // namespace

RunOutcome run(const ExperimentConfig& config) {
  const Problem problem = build_problem(config.problem);

  RunOutcome outcome;
  outcome.config_hash = config.hash();
  OutputDir out(config.output_directory);
  out.write_text("config.ini", config.serialize(), outcome.files_written);

  bool partial = false;
  json summary;
  std::string task_name;
  switch (config.task.kind) {
    case TaskKind::solve:
      task_name = "solve";
      summary = run_solve(config, problem, out, outcome.files_written, &partial);
      break;
    case TaskKind::dtilde:
      task_name = "dtilde";
      summary = run_dtilde(config, problem, out, outcome.files_written);
      break;
    case TaskKind::davi:
      task_name = "davi";
      summary = run_davi(config, problem, out, outcome.files_written, &partial);
      break;
    case TaskKind::rates:
      task_name = "rates";
      summary = run_rates(config, problem, out, outcome.files_written, &partial);
      break;
    case TaskKind::choose_alpha:
      task_name = "choose-alpha";
      summary = run_choose_alpha(config, problem, out, outcome.files_written, &partial);
      break;
    case TaskKind::check_bounds:
      task_name = "check-bounds";
      summary = run_check_bounds(config, problem, out, outcome.files_written, &partial);
      break;
  }

  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(outcome.config_hash));
  const auto now = std::chrono::system_clock::now();
  json record{{"config_hash", hash_hex},
              {"task", task_name},
              {"partial", partial},
              {"summary", summary},
              {"files", outcome.files_written},
              {"config", config.serialize()},
              {"timestamp_unix_ms",
               std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch())
                   .count()}};
  outcome.record_json = record.dump(2) + "\n";
  out.write_text("record.json", outcome.record_json, outcome.files_written);
  outcome.partial = partial;
  return outcome;
}

}  // namespace tikhlab
