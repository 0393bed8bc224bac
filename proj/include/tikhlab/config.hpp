#ifndef TIKHLAB_CONFIG_HPP
#define TIKHLAB_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tikhlab/analysis.hpp"
#include "tikhlab/problem.hpp"
#include "tikhlab/solver.hpp"

namespace tikhlab {

/// Configuration error (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TaskKind { solve, dtilde, davi, rates, choose_alpha, check_bounds };

enum class AlphaRuleKind { apriori, fixed, phi };

struct ProblemSpec {
  std::string operator_kind = "diagonal";  // diagonal | integration | autoconvolution
  std::size_t n = 100;
  double h = 0.0;                          // 0: default 1/n
  std::string sigma_law = "inverse_k";     // inverse_k | inverse_k_squared | geometric:<q>
  std::string penalty = "squared_norm";    // squared_norm | power_norm:<t> | negative_entropy
  std::string similarity = "norm";         // norm | norm_power:<q> | wasserstein:<q>
  double p = 2.0;
  std::string solution = "holder:1.0";     // holder:<mu> | source:<eta_norm> | bump | ones
  std::uint64_t solution_seed = 1;
  double solution_scale = 1.0;
};

struct TaskSpec {
  TaskKind kind = TaskKind::solve;

  // solve
  double delta = 1e-3;
  double alpha = 1e-2;

  // grids
  double delta_min = 1e-6, delta_max = 1e-2;
  int delta_count = 8;
  double r_min = 1e-2, r_max = 1e4;
  int r_count = 40;

  // rates
  AlphaRuleKind alpha_rule = AlphaRuleKind::apriori;
  double rule_kappa = 1.0;
  double rule_c = 1.0;
  double fixed_alpha = 1e-2;
  std::string noise_profile = "white";  // white | log_uniform

  // avi / level set
  double beta1 = 0.0, beta2 = 1.0, gamma = 1.0, kappa = 1.0;
  double alpha_bar = 1.0;
  double rho_margin = 1.1;

  // choose-alpha distance source: davi | dtilde | powerlaw:<a>:<b>
  std::string distance_source = "davi";

  // check-bounds
  double q = 1.0;

  // solver
  int max_iterations = 20000;
  double gradient_tolerance = 1e-10;
  int restarts = 0;
  std::string initial_point = "zero";  // zero | u_true_perturbed | data_backprojection
  std::uint64_t seed = 7;
};

struct ExperimentConfig {
  ProblemSpec problem;
  TaskSpec task;
  std::string output_directory = "out";

  /// Canonical text form; re-parsing it reproduces the config exactly.
  std::string serialize() const;
  /// FNV-1a hash of the canonical form.
  std::uint64_t hash() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

Problem build_problem(const ProblemSpec& spec);
SolverConfig build_solver_config(const TaskSpec& task);
LevelSetSpec build_level_set_spec(const Problem& problem, const TaskSpec& task);

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();
const Preset& preset_by_name(const std::string& name);

}  // namespace tikhlab

#endif
