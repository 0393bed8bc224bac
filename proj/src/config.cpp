#include "tikhlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tikhlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  return static_cast<int>(to_u64(key, v));
}

TaskKind task_kind_from(const std::string& s) {
  if (s == "solve") return TaskKind::solve;
  if (s == "dtilde") return TaskKind::dtilde;
  if (s == "davi") return TaskKind::davi;
  if (s == "rates") return TaskKind::rates;
  if (s == "choose-alpha") return TaskKind::choose_alpha;
  if (s == "check-bounds") return TaskKind::check_bounds;
  throw ConfigError("config: unknown task kind '" + s + "'");
}

std::string task_kind_name(TaskKind k) {
  switch (k) {
    case TaskKind::solve: return "solve";
    case TaskKind::dtilde: return "dtilde";
    case TaskKind::davi: return "davi";
    case TaskKind::rates: return "rates";
    case TaskKind::choose_alpha: return "choose-alpha";
    case TaskKind::check_bounds: return "check-bounds";
  }
  return "?";
}

AlphaRuleKind alpha_rule_from(const std::string& s) {
  if (s == "apriori") return AlphaRuleKind::apriori;
  if (s == "fixed") return AlphaRuleKind::fixed;
  if (s == "phi") return AlphaRuleKind::phi;
  throw ConfigError("config: unknown alpha rule '" + s + "'");
}

std::string alpha_rule_name(AlphaRuleKind k) {
  switch (k) {
    case AlphaRuleKind::apriori: return "apriori";
    case AlphaRuleKind::fixed: return "fixed";
    case AlphaRuleKind::phi: return "phi";
  }
  return "?";
}

/// "name:1.5" -> {"name", "1.5"}; plain names leave the argument empty.
std::pair<std::string, std::string> split_tag(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) return {s, ""};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

}  // namespace

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << "[problem]\n";
  os << "operator = " << problem.operator_kind << "\n";
  os << "n = " << problem.n << "\n";
  os << "h = " << format_double(problem.h) << "\n";
  os << "sigma_law = " << problem.sigma_law << "\n";
  os << "penalty = " << problem.penalty << "\n";
  os << "similarity = " << problem.similarity << "\n";
  os << "p = " << format_double(problem.p) << "\n";
  os << "solution = " << problem.solution << "\n";
  os << "solution_seed = " << problem.solution_seed << "\n";
  os << "solution_scale = " << format_double(problem.solution_scale) << "\n";
  os << "\n[task]\n";
  os << "kind = " << task_kind_name(task.kind) << "\n";
  os << "delta = " << format_double(task.delta) << "\n";
  os << "alpha = " << format_double(task.alpha) << "\n";
  os << "delta_min = " << format_double(task.delta_min) << "\n";
  os << "delta_max = " << format_double(task.delta_max) << "\n";
  os << "delta_count = " << task.delta_count << "\n";
  os << "r_min = " << format_double(task.r_min) << "\n";
  os << "r_max = " << format_double(task.r_max) << "\n";
  os << "r_count = " << task.r_count << "\n";
  os << "alpha_rule = " << alpha_rule_name(task.alpha_rule) << "\n";
  os << "rule_kappa = " << format_double(task.rule_kappa) << "\n";
  os << "rule_c = " << format_double(task.rule_c) << "\n";
  os << "fixed_alpha = " << format_double(task.fixed_alpha) << "\n";
  os << "noise_profile = " << task.noise_profile << "\n";
  os << "beta1 = " << format_double(task.beta1) << "\n";
  os << "beta2 = " << format_double(task.beta2) << "\n";
  os << "gamma = " << format_double(task.gamma) << "\n";
  os << "kappa = " << format_double(task.kappa) << "\n";
  os << "alpha_bar = " << format_double(task.alpha_bar) << "\n";
  os << "rho_margin = " << format_double(task.rho_margin) << "\n";
  os << "distance_source = " << task.distance_source << "\n";
  os << "q = " << format_double(task.q) << "\n";
  os << "max_iterations = " << task.max_iterations << "\n";
  os << "gradient_tolerance = " << format_double(task.gradient_tolerance) << "\n";
  os << "restarts = " << task.restarts << "\n";
  os << "initial_point = " << task.initial_point << "\n";
  os << "seed = " << task.seed << "\n";
  os << "\n[output]\n";
  os << "directory = " << output_directory << "\n";
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
  const std::string s = serialize();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: bad section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "task" && section != "output")
        throw ConfigError("config: unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section == "problem") {
      if (key == "operator") cfg.problem.operator_kind = val;
      else if (key == "n") cfg.problem.n = to_u64(key, val);
      else if (key == "h") cfg.problem.h = to_double(key, val);
      else if (key == "sigma_law") cfg.problem.sigma_law = val;
      else if (key == "penalty") cfg.problem.penalty = val;
      else if (key == "similarity") cfg.problem.similarity = val;
      else if (key == "p") cfg.problem.p = to_double(key, val);
      else if (key == "solution") cfg.problem.solution = val;
      else if (key == "solution_seed") cfg.problem.solution_seed = to_u64(key, val);
      else if (key == "solution_scale") cfg.problem.solution_scale = to_double(key, val);
      else throw ConfigError("config: unknown problem key '" + key + "'");
    } else if (section == "task") {
      if (key == "kind") cfg.task.kind = task_kind_from(val);
      else if (key == "delta") cfg.task.delta = to_double(key, val);
      else if (key == "alpha") cfg.task.alpha = to_double(key, val);
      else if (key == "delta_min") cfg.task.delta_min = to_double(key, val);
      else if (key == "delta_max") cfg.task.delta_max = to_double(key, val);
      else if (key == "delta_count") cfg.task.delta_count = to_int(key, val);
      else if (key == "r_min") cfg.task.r_min = to_double(key, val);
      else if (key == "r_max") cfg.task.r_max = to_double(key, val);
      else if (key == "r_count") cfg.task.r_count = to_int(key, val);
      else if (key == "alpha_rule") cfg.task.alpha_rule = alpha_rule_from(val);
      else if (key == "rule_kappa") cfg.task.rule_kappa = to_double(key, val);
      else if (key == "rule_c") cfg.task.rule_c = to_double(key, val);
      else if (key == "fixed_alpha") cfg.task.fixed_alpha = to_double(key, val);
      else if (key == "noise_profile") cfg.task.noise_profile = val;
      else if (key == "beta1") cfg.task.beta1 = to_double(key, val);
      else if (key == "beta2") cfg.task.beta2 = to_double(key, val);
      else if (key == "gamma") cfg.task.gamma = to_double(key, val);
      else if (key == "kappa") cfg.task.kappa = to_double(key, val);
      else if (key == "alpha_bar") cfg.task.alpha_bar = to_double(key, val);
      else if (key == "rho_margin") cfg.task.rho_margin = to_double(key, val);
      else if (key == "distance_source") cfg.task.distance_source = val;
      else if (key == "q") cfg.task.q = to_double(key, val);
      else if (key == "max_iterations") cfg.task.max_iterations = to_int(key, val);
      else if (key == "gradient_tolerance") cfg.task.gradient_tolerance = to_double(key, val);
      else if (key == "restarts") cfg.task.restarts = to_int(key, val);
      else if (key == "initial_point") cfg.task.initial_point = val;
      else if (key == "seed") cfg.task.seed = to_u64(key, val);
      else throw ConfigError("config: unknown task key '" + key + "'");
    } else if (section == "output") {
      if (key == "directory") cfg.output_directory = val;
      else throw ConfigError("config: unknown output key '" + key + "'");
    } else {
      throw ConfigError("config: key outside a section at line " + std::to_string(lineno));
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

// ---------------------------------------------------------------------------
// Builders.
// ---------------------------------------------------------------------------

namespace {

std::vector<double> build_sigma(const ProblemSpec& spec) {
  const auto [law, arg] = split_tag(spec.sigma_law);
  std::vector<double> sigma(spec.n);
  if (law == "inverse_k") {
    for (std::size_t k = 0; k < spec.n; ++k) sigma[k] = 1.0 / static_cast<double>(k + 1);
  } else if (law == "inverse_k_squared") {
    for (std::size_t k = 0; k < spec.n; ++k) {
      const double kk = static_cast<double>(k + 1);
      sigma[k] = 1.0 / (kk * kk);
    }
  } else if (law == "geometric") {
    const double qf = to_double("sigma_law", arg);
    if (!(qf > 0.0 && qf < 1.0)) throw ConfigError("config: geometric ratio must be in (0,1)");
    double s = 1.0;
    for (std::size_t k = 0; k < spec.n; ++k) {
      sigma[k] = s;
      s *= qf;
    }
  } else if (law == "ones") {
    sigma.assign(spec.n, 1.0);
  } else {
    throw ConfigError("config: unknown sigma law '" + spec.sigma_law + "'");
  }
  return sigma;
}

GridVector build_solution(const ProblemSpec& spec, const ForwardOperator& op, double h) {
  const auto [kind, arg] = split_tag(spec.solution);
  const std::size_t n = spec.n;
  Rng rng(spec.solution_seed);
  if (kind == "holder") {
    // u_k = sigma_k^mu w_k with w carrying equal energy per spectral octave.
    if (op.kind != ForwardOperator::Kind::diagonal)
      throw ConfigError("config: holder solutions need a diagonal operator");
    const double mu = to_double("solution", arg);
    if (!(mu > 0.0 && mu <= 1.0)) throw ConfigError("config: holder mu must lie in (0,1]");
    GridVector u = GridVector::zeros(n, h);
    for (std::size_t k = 0; k < n; ++k)
      u.values[k] =
          std::pow(op.sigma[k], mu) * rng.sign() / std::sqrt(static_cast<double>(k + 1));
    const double nu = norm(u);
    return scale(u, spec.solution_scale / nu);
  }
  if (kind == "source") {
    // eta with log-uniform spectral energy, scaled to the requested norm;
    // u = F'(u)^* eta / 2 so that xi = 2u = F'^* eta for the squared norm.
    if (op.kind != ForwardOperator::Kind::diagonal)
      throw ConfigError("config: source solutions need a diagonal operator");
    const double eta_norm = to_double("solution", arg);
    GridVector eta = GridVector::zeros(n, h);
    for (std::size_t k = 0; k < n; ++k)
      eta.values[k] = rng.sign() / std::sqrt(static_cast<double>(k + 1));
    eta = scale(eta, eta_norm / norm(eta));
    GridVector u = GridVector::zeros(n, h);
    for (std::size_t k = 0; k < n; ++k) u.values[k] = 0.5 * op.sigma[k] * eta.values[k];
    return u;
  }
  if (kind == "bump") {
    // smooth positive bump, normalized to a probability density
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = (static_cast<double>(k) + 0.5) * h;
      const double z = (x - 0.45) / 0.12;
      v[k] = 0.05 + std::exp(-0.5 * z * z);
    }
    double mass = 0.0;
    for (double x : v) mass += x * h;
    for (double& x : v) x /= mass;
    return GridVector::measure(std::move(v), h);
  }
  if (kind == "ones") {
    GridVector u = GridVector::function(std::vector<double>(n, 1.0), h);
    return scale(u, spec.solution_scale);
  }
  throw ConfigError("config: unknown solution recipe '" + spec.solution + "'");
}

}  // namespace

Problem build_problem(const ProblemSpec& spec) {
  if (spec.n < 1) throw ConfigError("config: n must be positive");
  const double h = spec.h > 0.0 ? spec.h : 1.0 / static_cast<double>(spec.n);

  ForwardOperator op;
  if (spec.operator_kind == "diagonal")
    op = ForwardOperator::diagonal(build_sigma(spec), h);
  else if (spec.operator_kind == "integration")
    op = ForwardOperator::integration(spec.n, h);
  else if (spec.operator_kind == "autoconvolution")
    op = ForwardOperator::autoconvolution(spec.n, h);
  else
    throw ConfigError("config: unknown operator '" + spec.operator_kind + "'");

  Penalty pen;
  {
    const auto [kind, arg] = split_tag(spec.penalty);
    if (kind == "squared_norm") pen = Penalty::squared_norm();
    else if (kind == "power_norm") pen = Penalty::power_norm(to_double("penalty", arg));
    else if (kind == "negative_entropy") pen = Penalty::negative_entropy();
    else throw ConfigError("config: unknown penalty '" + spec.penalty + "'");
  }

  Similarity sim;
  {
    const auto [kind, arg] = split_tag(spec.similarity);
    if (kind == "norm") sim = Similarity::norm();
    else if (kind == "norm_power") sim = Similarity::norm_power(to_double("similarity", arg));
    else if (kind == "wasserstein") sim = Similarity::wasserstein(to_double("similarity", arg));
    else throw ConfigError("config: unknown similarity '" + spec.similarity + "'");
  }

  GridVector u_true = build_solution(spec, op, h);
  try {
    return make_problem(std::move(op), pen, sim, std::move(u_true), spec.p);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: inconsistent problem: ") + e.what());
  }
}

SolverConfig build_solver_config(const TaskSpec& task) {
  SolverConfig cfg;
  cfg.max_iterations = task.max_iterations;
  cfg.gradient_tolerance = task.gradient_tolerance;
  cfg.restarts = task.restarts;
  cfg.seed = task.seed;
  if (task.initial_point == "zero") cfg.initial_point = SolverConfig::InitialPoint::zero;
  else if (task.initial_point == "u_true_perturbed")
    cfg.initial_point = SolverConfig::InitialPoint::u_true_perturbed;
  else if (task.initial_point == "data_backprojection")
    cfg.initial_point = SolverConfig::InitialPoint::data_backprojection;
  else throw ConfigError("config: unknown initial point '" + task.initial_point + "'");
  return cfg;
}

LevelSetSpec build_level_set_spec(const Problem& problem, const TaskSpec& task) {
  LevelSetSpec spec;
  spec.alpha_bar = task.alpha_bar;
  spec.rho = rho_default(problem.omega_true(), problem.p, problem.s_constant(), task.rho_margin);
  return spec;
}

// ---------------------------------------------------------------------------
// Presets.
// ---------------------------------------------------------------------------

namespace {

ExperimentConfig holder_preset(double mu) {
  ExperimentConfig cfg;
  cfg.problem.operator_kind = "diagonal";
  cfg.problem.n = 200;
  cfg.problem.sigma_law = "inverse_k";
  cfg.problem.penalty = "squared_norm";
  cfg.problem.similarity = "norm";
  cfg.problem.p = 2.0;
  cfg.problem.solution = "holder:" + format_double(mu);
  cfg.problem.solution_seed = 11;
  cfg.task.kind = TaskKind::rates;
  cfg.task.delta_min = 1e-6;
  cfg.task.delta_max = 1e-2;
  cfg.task.delta_count = 8;
  cfg.task.alpha_rule = AlphaRuleKind::apriori;
  cfg.task.rule_kappa = holder_kappa(mu);
  cfg.task.rule_c = 1.0;
  cfg.task.noise_profile = "log_uniform";
  cfg.task.max_iterations = 150000;
  cfg.task.gradient_tolerance = 1e-13;
  cfg.task.seed = 23;
  cfg.output_directory = "out";
  return cfg;
}

// The -window variants keep alpha(delta) inside the resolvable spectral range
// [sigma_min^2, sigma_1^2]; outside it the discrete problem is effectively
// well posed and the curve bends away from the predicted power law.
ExperimentConfig holder_window_preset(double mu, std::size_t n, double dmin, double dmax,
                                      double c) {
  ExperimentConfig cfg = holder_preset(mu);
  cfg.problem.n = n;
  cfg.task.delta_min = dmin;
  cfg.task.delta_max = dmax;
  cfg.task.rule_c = c;
  cfg.task.max_iterations = 100000;
  return cfg;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> out;

  out.push_back({"holder-mu-0.25",
                 "Hoelder rate run, mu=0.25: diagonal k^-1 spectrum, n=200, p=2, "
                 "a-priori alpha=delta^(p-kappa)",
                 holder_preset(0.25)});
  out.push_back({"holder-mu-0.5", "Hoelder rate run, mu=0.5", holder_preset(0.5)});
  out.push_back({"holder-mu-1.0", "Hoelder rate run, mu=1.0", holder_preset(1.0)});

  out.push_back({"holder-mu-0.25-window",
                 "Hoelder mu=0.25 with noise levels kept above the spectral floor",
                 holder_window_preset(0.25, 5000, 1e-3, 1e-1, 3.0)});
  out.push_back({"holder-mu-0.5-window",
                 "Hoelder mu=0.5 with noise levels kept above the spectral floor",
                 holder_window_preset(0.5, 2000, 3e-4, 3e-2, 3.0)});
  out.push_back({"holder-mu-1.0-window",
                 "Hoelder mu=1.0 with noise levels kept above the spectral floor",
                 holder_window_preset(1.0, 2000, 1e-4, 1e-2, 5.0)});

  {
    ExperimentConfig cfg;
    cfg.problem.operator_kind = "diagonal";
    cfg.problem.n = 200;
    cfg.problem.sigma_law = "inverse_k";
    cfg.problem.penalty = "squared_norm";
    cfg.problem.similarity = "norm";
    cfg.problem.p = 1.0;
    cfg.problem.solution = "source:2.0";  // xi = F'^* eta with ||eta|| = 2
    cfg.problem.solution_seed = 5;
    cfg.task.kind = TaskKind::rates;
    cfg.task.alpha_rule = AlphaRuleKind::fixed;
    // fixed below the exact-penalization threshold 1/||eta|| = 0.5
    cfg.task.fixed_alpha = 0.4;
    cfg.task.delta_min = 3e-3;
    cfg.task.delta_max = 3e-1;
    cfg.task.delta_count = 8;
    cfg.task.noise_profile = "log_uniform";
    cfg.task.max_iterations = 120000;
    cfg.task.gradient_tolerance = 1e-11;
    cfg.task.seed = 29;
    out.push_back({"exact-penalization",
                   "p=1 with explicit source element and small fixed alpha: O(delta) rate",
                   cfg});
  }

  {
    ExperimentConfig cfg;
    cfg.problem.operator_kind = "diagonal";
    cfg.problem.n = 40;
    // severely ill-posed spectrum: keeps exact data interpolation out of
    // reach over the whole noise range, so the qualification cap is visible
    cfg.problem.sigma_law = "geometric:0.65";
    cfg.problem.penalty = "squared_norm";
    cfg.problem.similarity = "norm";
    cfg.problem.p = 0.5;
    cfg.problem.solution = "source:2.0";  // smoothness exceeding the exponent p
    cfg.problem.solution_seed = 13;
    cfg.task.kind = TaskKind::rates;
    cfg.task.alpha_rule = AlphaRuleKind::apriori;
    cfg.task.rule_kappa = 0.3;  // kappa < p sweep member
    cfg.task.rule_c = 0.2;
    cfg.task.delta_min = 1e-5;
    cfg.task.delta_max = 1e-2;
    cfg.task.delta_count = 7;
    cfg.task.noise_profile = "white";
    cfg.task.restarts = 6;
    cfg.task.initial_point = "u_true_perturbed";
    cfg.task.max_iterations = 40000;
    cfg.task.gradient_tolerance = 1e-11;
    cfg.task.seed = 31;
    out.push_back({"small-p",
                   "p=0.5 qualification barrier: rates stay at or below p despite extra "
                   "smoothness",
                   cfg});
  }

  {
    ExperimentConfig cfg;
    cfg.problem.operator_kind = "autoconvolution";
    cfg.problem.n = 64;
    cfg.problem.penalty = "squared_norm";
    cfg.problem.similarity = "norm";
    cfg.problem.p = 2.0;
    cfg.problem.solution = "ones";
    cfg.problem.solution_scale = 1.0;
    cfg.task.kind = TaskKind::check_bounds;
    cfg.task.q = 1.0;
    cfg.task.seed = 37;
    out.push_back({"autoconvolution-degree",
                   "nonlinearity degree fit and directional-derivative checks for the "
                   "autoconvolution operator",
                   cfg});
  }

  {
    ExperimentConfig cfg;
    cfg.problem.operator_kind = "diagonal";
    cfg.problem.sigma_law = "ones";
    cfg.problem.n = 60;
    cfg.problem.penalty = "negative_entropy";
    cfg.problem.similarity = "wasserstein:1";
    cfg.problem.p = 1.0;
    cfg.problem.solution = "bump";
    cfg.task.kind = TaskKind::solve;
    cfg.task.delta = 5e-3;
    cfg.task.alpha = 1e-2;
    cfg.task.max_iterations = 4000;
    cfg.task.seed = 41;
    out.push_back({"wasserstein-entropy",
                   "Wasserstein residual with entropy penalty on the probability simplex",
                   cfg});
  }

  {
    ExperimentConfig cfg;
    cfg.problem.operator_kind = "diagonal";
    cfg.problem.n = 100;
    cfg.problem.sigma_law = "inverse_k";
    cfg.problem.penalty = "squared_norm";
    cfg.problem.similarity = "norm";
    cfg.problem.p = 2.0;
    cfg.problem.solution = "holder:0.5";
    cfg.problem.solution_seed = 17;
    cfg.task.kind = TaskKind::dtilde;
    cfg.task.r_min = 1e-2;
    cfg.task.r_max = 1e4;
    cfg.task.r_count = 40;
    out.push_back({"dtilde-diagonal",
                   "approximate-source-condition distance function on a diagonal instance",
                   cfg});
  }

  {
    ExperimentConfig cfg;
    cfg.problem.operator_kind = "diagonal";
    cfg.problem.n = 60;
    cfg.problem.sigma_law = "inverse_k";
    cfg.problem.penalty = "squared_norm";
    cfg.problem.similarity = "norm";
    cfg.problem.p = 2.0;
    cfg.problem.solution = "holder:0.5";
    cfg.problem.solution_seed = 19;
    cfg.task.kind = TaskKind::davi;
    cfg.task.beta1 = 0.0;
    cfg.task.beta2 = 1.0;
    cfg.task.gamma = 1.0;
    cfg.task.kappa = 1.0;
    cfg.task.alpha_bar = 1.0;
    cfg.task.r_min = 1e-2;
    cfg.task.r_max = 1e2;
    cfg.task.r_count = 25;
    cfg.task.max_iterations = 300;
    cfg.task.seed = 43;
    out.push_back({"davi-quadratic",
                   "approximate-variational-inequality distance on a linear-quadratic instance",
                   cfg});
  }

  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& preset_by_name(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name) return p;
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace tikhlab
