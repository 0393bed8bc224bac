#include "tikhlab/nonlinearity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace tikhlab {

GridVector taylor_remainder(const Problem& problem, const GridVector& u) {
  const GridVector du = axpy(u, -1.0, problem.u_true);
  GridVector r = axpy(apply(problem.op, u), -1.0, problem.v_exact);
  return axpy(r, -1.0, derivative_apply(problem.op, problem.u_true, du));
}

namespace {

struct Row {
  double log_rem;
  double log_df;
  double log_breg;
};

// 3x3 symmetric solve by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int i = col + 1; i < 3; ++i)
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (a[col][col] == 0.0) throw std::runtime_error("fit_nonlinearity_degree: singular fit");
    for (int i = col + 1; i < 3; ++i) {
      const double f = a[i][col] / a[col][col];
      for (int j = col; j < 3; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::array<double, 3> x{};
  for (int i = 3; i-- > 0;) {
    double s = b[i];
    for (int j = i + 1; j < 3; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

NonlinearityDegreeFit fit_nonlinearity_degree(const Problem& problem, const LevelSetSpec& spec,
                                              const std::vector<GridVector>& sample_points) {
  const double scale = std::max(1.0, norm(problem.v_exact));
  std::vector<Row> rows;
  std::vector<std::array<double, 3>> raw;  // (rem, df, breg) for the K inflation
  for (const GridVector& u : sample_points) {
    if (!level_set_member(problem, spec, u))
      throw std::invalid_argument("fit_nonlinearity_degree: sample outside the level set");
    const double rem = norm(taylor_remainder(problem, u));
    const double df = norm(axpy(apply(problem.op, u), -1.0, problem.v_exact));
    const double breg = problem.bregman_to_true(u);
    if (rem <= 1e-14 * scale) continue;  // degenerate: no remainder to explain
    if (df <= 0.0 || breg <= 0.0) continue;
    rows.push_back(Row{std::log(rem), std::log(df), std::log(breg)});
    raw.push_back({rem, df, breg});
  }

  NonlinearityDegreeFit fit;
  if (rows.empty()) {
    // Exactly linear on all samples; the inequality holds trivially with K = 0.
    fit.c1 = 1.0;
    fit.c2 = 0.0;
    fit.K = 0.0;
    fit.residual = 0.0;
    return fit;
  }
  if (rows.size() < 10)
    throw std::invalid_argument("fit_nonlinearity_degree: need at least 10 usable samples");

  // Least squares for log rem ~ c1 log df + c2 log breg + log K.
  std::array<std::array<double, 3>, 3> ata{};
  std::array<double, 3> atb{};
  for (const Row& r : rows) {
    const std::array<double, 3> v{r.log_df, r.log_breg, 1.0};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) ata[i][j] += v[i] * v[j];
      atb[i] += v[i] * r.log_rem;
    }
  }
  for (int i = 0; i < 3; ++i) ata[i][i] += 1e-12;  // collinearity guard
  const auto sol = solve3(ata, atb);
  fit.c1 = std::max(0.0, sol[0]);
  fit.c2 = std::min(std::max(0.0, sol[1]), 0.999);

  double rss = 0.0;
  for (const Row& r : rows) {
    const double pred = sol[0] * r.log_df + sol[1] * r.log_breg + sol[2];
    rss += (r.log_rem - pred) * (r.log_rem - pred);
  }
  fit.residual = std::sqrt(rss / static_cast<double>(rows.size()));

  // Inflate K into a certified bound on the fitting samples.
  double k_needed = 0.0;
  for (const auto& [rem, df, breg] : raw)
    k_needed = std::max(k_needed, rem / (std::pow(df, fit.c1) * std::pow(breg, fit.c2)));
  fit.K = 1.02 * k_needed;
  return fit;
}

}  // namespace tikhlab
