#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tikhlab/runner.hpp"

using namespace tikhlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("tikhlab_test_" + tag);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config round trip through the canonical form") {
  ExperimentConfig cfg = preset_by_name("dtilde-diagonal").config;
  cfg.output_directory = "somewhere/else";
  const std::string text = cfg.serialize();
  const ExperimentConfig again = parse_config(text);
  CHECK(again.serialize() == text);
  CHECK(again.hash() == cfg.hash());
  CHECK(again.problem.n == cfg.problem.n);
  CHECK(again.task.kind == cfg.task.kind);
}

TEST_CASE("config parser rejects malformed input") {
  CHECK_THROWS_AS(parse_config("[problem]\nmystery = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[weird]\nn = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 4\n"), ConfigError);          // key before any section
  CHECK_THROWS_AS(parse_config("[problem]\nn == 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[problem]\np = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[task]\nkind = dance\n"), ConfigError);
}

TEST_CASE("comments and blank lines are tolerated") {
  const ExperimentConfig cfg = parse_config(
      "# experiment\n\n[problem]\nn = 12   # a dozen modes\noperator = diagonal\n\n[task]\n"
      "kind = dtilde\nr_count = 5\n");
  CHECK(cfg.problem.n == 12);
  CHECK(cfg.task.r_count == 5);
}

TEST_CASE("required presets exist") {
  for (const char* name :
       {"holder-mu-0.25", "holder-mu-0.5", "holder-mu-1.0", "exact-penalization", "small-p",
        "autoconvolution-degree", "wasserstein-entropy", "dtilde-diagonal", "davi-quadratic"}) {
    const Preset& p = preset_by_name(name);
    CHECK(p.name == name);
    CHECK_FALSE(p.description.empty());
  }
  CHECK_THROWS_AS(preset_by_name("no-such-preset"), ConfigError);
}

TEST_CASE("dtilde task writes monotone CSV output") {
  ExperimentConfig cfg = preset_by_name("dtilde-diagonal").config;
  cfg.problem.n = 24;
  cfg.task.r_count = 12;
  const fs::path dir = fresh_dir("dtilde");
  cfg.output_directory = dir.string();
  const RunOutcome outcome = run(cfg);
  CHECK(outcome.files_written.size() >= 4);

  const std::string csv = slurp((dir / "dtilde.csv").string());
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# schema: dtilde-v1", 0) == 0);
  std::getline(is, line);
  CHECK(line == "r,value");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double value = std::stod(line.substr(comma + 1));
    CHECK(value <= prev + 1e-12);
    prev = value;
    ++rows;
  }
  CHECK(rows == 12);
  CHECK(fs::exists(dir / "dtilde.dat"));
  CHECK(fs::exists(dir / "config.ini"));
  CHECK(fs::exists(dir / "record.json"));
  fs::remove_all(dir);
}

TEST_CASE("identical config and seed produce byte-identical CSVs") {
  ExperimentConfig cfg = preset_by_name("davi-quadratic").config;
  cfg.problem.n = 16;
  cfg.task.r_count = 6;
  cfg.task.max_iterations = 60;

  const fs::path d1 = fresh_dir("det1");
  const fs::path d2 = fresh_dir("det2");
  cfg.output_directory = d1.string();
  run(cfg);
  cfg.output_directory = d2.string();
  run(cfg);
  CHECK(slurp((d1 / "davi.csv").string()) == slurp((d2 / "davi.csv").string()));
  CHECK(slurp((d1 / "davi.dat").string()) == slurp((d2 / "davi.dat").string()));
  CHECK(slurp((d1 / "config.ini").string()) != "");
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("CSV floats carry 17 significant digits") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", 1.0 / 3.0);
  const std::string printed = buf;
  CHECK(printed == "0.33333333333333331");

  ExperimentConfig cfg = preset_by_name("dtilde-diagonal").config;
  cfg.problem.n = 8;
  cfg.task.r_count = 4;
  const fs::path dir = fresh_dir("digits");
  cfg.output_directory = dir.string();
  run(cfg);
  const std::string csv = slurp((dir / "dtilde.csv").string());
  // the distance values are irrational for this instance; expect long mantissas
  bool long_mantissa = false;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos || line[0] == '#' || line[0] == 'r') continue;
    if (line.size() - comma > 12) long_mantissa = true;
  }
  CHECK(long_mantissa);
  fs::remove_all(dir);
}

TEST_CASE("solve task records the certificate and membership flags") {
  ExperimentConfig cfg = preset_by_name("wasserstein-entropy").config;
  cfg.problem.n = 20;
  cfg.task.max_iterations = 800;
  const fs::path dir = fresh_dir("solve");
  cfg.output_directory = dir.string();
  const RunOutcome outcome = run(cfg);
  const std::string csv = slurp((dir / "solve.csv").string());
  CHECK(csv.find("certificate_ok") != std::string::npos);
  CHECK(outcome.record_json.find("\"task\": \"solve\"") != std::string::npos);
  CHECK(fs::exists(dir / "minimizer.dat"));
  fs::remove_all(dir);
}

TEST_CASE("rates task emits fit summary and per-point rows") {
  ExperimentConfig cfg;
  cfg.problem.operator_kind = "diagonal";
  cfg.problem.n = 30;
  cfg.problem.sigma_law = "inverse_k";
  cfg.problem.penalty = "squared_norm";
  cfg.problem.similarity = "norm";
  cfg.problem.p = 2.0;
  cfg.problem.solution = "holder:1.0";
  cfg.task.kind = TaskKind::rates;
  cfg.task.alpha_rule = AlphaRuleKind::apriori;
  cfg.task.rule_kappa = 1.0;
  cfg.task.rule_c = 3.0;
  cfg.task.delta_min = 2e-3;
  cfg.task.delta_max = 2e-1;
  cfg.task.delta_count = 5;
  cfg.task.noise_profile = "log_uniform";
  cfg.task.max_iterations = 150000;
  cfg.task.gradient_tolerance = 1e-12;
  const fs::path dir = fresh_dir("rates");
  cfg.output_directory = dir.string();
  const RunOutcome outcome = run(cfg);
  CHECK(outcome.record_json.find("\"slope\"") != std::string::npos);
  const std::string csv = slurp((dir / "rates.csv").string());
  int rows = 0;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#' && line[0] != 'd') ++rows;
  CHECK(rows == 5);
  fs::remove_all(dir);
}

TEST_CASE("rates task with the phi-based alpha rule") {
  ExperimentConfig cfg;
  cfg.problem.operator_kind = "diagonal";
  cfg.problem.n = 20;
  cfg.problem.sigma_law = "inverse_k";
  cfg.problem.penalty = "squared_norm";
  cfg.problem.similarity = "norm";
  cfg.problem.p = 2.0;
  cfg.problem.solution = "holder:1.0";
  cfg.task.kind = TaskKind::rates;
  cfg.task.alpha_rule = AlphaRuleKind::phi;
  cfg.task.distance_source = "powerlaw:1.0:1.0";
  cfg.task.kappa = 1.0;
  cfg.task.gamma = 1.0;
  cfg.task.r_min = 1e-3;
  cfg.task.r_max = 1e5;
  cfg.task.r_count = 50;
  cfg.task.delta_min = 1e-3;
  cfg.task.delta_max = 1e-1;
  cfg.task.delta_count = 5;
  cfg.task.max_iterations = 30000;
  cfg.task.gradient_tolerance = 1e-11;
  const fs::path dir = fresh_dir("phirule");
  cfg.output_directory = dir.string();
  const RunOutcome outcome = run(cfg);
  CHECK(outcome.record_json.find("\"slope\"") != std::string::npos);
  // the power-law table with kappa=1, gamma=1, p=2 forces alpha = delta^{3/2}
  const std::string csv = slurp((dir / "rates.csv").string());
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
    std::istringstream row(line);
    std::string tok;
    std::getline(row, tok, ',');
    const double delta = std::stod(tok);
    std::getline(row, tok, ',');
    const double alpha = std::stod(tok);
    CHECK(alpha == doctest::Approx(std::pow(delta, 1.5)).epsilon(1e-6));
  }
  fs::remove_all(dir);
}

TEST_CASE("choose-alpha task with a power-law distance source") {
  ExperimentConfig cfg;
  cfg.problem.operator_kind = "diagonal";
  cfg.problem.n = 10;
  cfg.problem.sigma_law = "inverse_k";
  cfg.problem.penalty = "squared_norm";
  cfg.problem.similarity = "norm";
  cfg.problem.p = 2.0;
  cfg.problem.solution = "holder:0.5";
  cfg.task.kind = TaskKind::choose_alpha;
  cfg.task.distance_source = "powerlaw:1.0:1.0";
  cfg.task.kappa = 1.0;
  cfg.task.gamma = 1.0;
  cfg.task.r_min = 1e-3;
  cfg.task.r_max = 1e5;
  cfg.task.r_count = 60;
  cfg.task.delta_min = 1e-4;
  cfg.task.delta_max = 1e-2;
  cfg.task.delta_count = 6;
  const fs::path dir = fresh_dir("choosealpha");
  cfg.output_directory = dir.string();
  run(cfg);
  const std::string csv = slurp((dir / "choose_alpha.csv").string());
  // d(r) = 1/r with kappa=1, gamma=1, p=2 forces alpha = delta^{3/2}
  std::istringstream is(csv);
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
    std::istringstream row(line);
    std::string tok;
    std::getline(row, tok, ',');
    const double delta = std::stod(tok);
    std::getline(row, tok, ',');
    const double alpha = std::stod(tok);
    CHECK(alpha == doctest::Approx(std::pow(delta, 1.5)).epsilon(1e-6));
    ++rows;
  }
  CHECK(rows == 6);
  CHECK(fs::exists(dir / "alpha.dat"));
  fs::remove_all(dir);
}

TEST_CASE("check-bounds task reports the degree fit and the kappa check") {
  ExperimentConfig cfg = preset_by_name("autoconvolution-degree").config;
  cfg.problem.n = 24;
  cfg.task.r_count = 8;
  cfg.task.delta_count = 5;
  cfg.task.max_iterations = 150;
  const fs::path dir = fresh_dir("checkbounds");
  cfg.output_directory = dir.string();
  const RunOutcome outcome = run(cfg);
  CHECK(fs::exists(dir / "kappa_check.csv"));
  CHECK(outcome.record_json.find("degree_fit") != std::string::npos);
  CHECK(outcome.record_json.find("l_omega") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("invalid configurations surface as ConfigError before running") {
  ExperimentConfig cfg = preset_by_name("dtilde-diagonal").config;
  cfg.problem.operator_kind = "laplace";
  CHECK_THROWS_AS(run(cfg), ConfigError);

  ExperimentConfig bad_rates = preset_by_name("holder-mu-0.5").config;
  bad_rates.task.delta_count = 3;  // too few noise levels
  bad_rates.output_directory = fresh_dir("bad").string();
  CHECK_THROWS_AS(run(bad_rates), ConfigError);
  fs::remove_all(fresh_dir("bad"));
}
