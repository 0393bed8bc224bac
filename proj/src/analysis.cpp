#include "tikhlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tikhlab/dense.hpp"

namespace tikhlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GridVector xi_as_vector(const Problem& problem) {
  return GridVector::function(problem.xi.coefficients, problem.xi.h);
}

}  // namespace

// ---------------------------------------------------------------------------
// Approximate source condition distance.
// ---------------------------------------------------------------------------

namespace {

struct DiagonalSecular {
  // eta_lambda,k = sigma_k xi_k / (sigma_k^2 + lambda)
  const std::vector<double>& sigma;
  const std::vector<double>& xi;
  double h;

  double eta_norm_sq(double lambda) const {
    double s = 0.0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const double e = sigma[k] * xi[k] / (sigma[k] * sigma[k] + lambda);
      s += e * e;
    }
    return h * s;
  }

  AscResult result(double lambda) const {
    AscResult out;
    out.eta = GridVector::zeros(sigma.size(), h);
    double s = 0.0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const double denom = sigma[k] * sigma[k] + lambda;
      out.eta.values[k] = sigma[k] * xi[k] / denom;
      const double resid = lambda * xi[k] / denom;
      s += resid * resid;
    }
    out.value = std::sqrt(h * s);
    return out;
  }
};

// Bisection on the decreasing map lambda -> ||eta_lambda|| to hit r.
template <typename NormSq, typename Result>
AscResult solve_secular(double r, const NormSq& eta_norm_sq, const Result& result) {
  const double r2 = r * r;
  if (eta_norm_sq(0.0) <= r2) return result(0.0);
  double hi = 1.0;
  while (eta_norm_sq(hi) > r2) {
    hi *= 4.0;
    if (hi > 1e60) break;
  }
  double lo = 0.0;
  for (int it = 0; it < 400 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eta_norm_sq(mid) > r2 ? lo : hi) = mid;
  }
  return result(0.5 * (lo + hi));
}

}  // namespace

AscResult asc_distance_dense(const Problem& problem, double r) {
  if (r < 0.0) throw std::invalid_argument("asc_distance: r must be nonnegative");
  const ForwardOperator& op = problem.op;
  if (op.h_u != op.h_v)
    throw std::invalid_argument("asc_distance: mixed grid spacings are not supported");
  const GridVector xi_vec = xi_as_vector(problem);
  if (r == 0.0) return AscResult{norm(problem.xi), GridVector::zeros(op.n_v, op.h_v)};

  const Matrix m = derivative_matrix(op, problem.u_true);
  const Matrix bbt = gram_transposed(m);
  const std::vector<double> bxi = matvec(m, xi_vec.values);
  const double h = op.h_v;

  const auto eta_of = [&](double lambda) {
    return cholesky_solve(bbt, lambda, bxi);
  };
  const auto norm_sq = [&](double lambda) {
    const auto eta = eta_of(lambda);
    double s = 0.0;
    for (double x : eta) s += x * x;
    return h * s;
  };
  const auto result = [&](double lambda) {
    AscResult out;
    out.eta = GridVector::zeros(op.n_v, op.h_v);
    out.eta.values = eta_of(lambda);
    const std::vector<double> bt_eta = matvec_transposed(m, out.eta.values);
    double s = 0.0;
    for (std::size_t j = 0; j < bt_eta.size(); ++j) {
      const double d = xi_vec.values[j] - bt_eta[j];
      s += d * d;
    }
    out.value = std::sqrt(problem.u_true.h * s);
    return out;
  };
  return solve_secular(r, norm_sq, result);
}

AscResult asc_distance(const Problem& problem, double r) {
  if (r < 0.0) throw std::invalid_argument("asc_distance: r must be nonnegative");
  if (problem.op.kind != ForwardOperator::Kind::diagonal) return asc_distance_dense(problem, r);
  if (r == 0.0)
    return AscResult{norm(problem.xi), GridVector::zeros(problem.op.n_v, problem.op.h_v)};
  DiagonalSecular sec{problem.op.sigma, problem.xi.coefficients, problem.op.h_v};
  return solve_secular(
      r, [&](double l) { return sec.eta_norm_sq(l); }, [&](double l) { return sec.result(l); });
}

DistanceTable asc_table(const Problem& problem, const std::vector<double>& r_grid) {
  std::vector<std::pair<double, double>> entries;
  entries.reserve(r_grid.size());
  for (double r : r_grid) entries.emplace_back(r, asc_distance(problem, r).value);
  return DistanceTable(std::move(entries));
}

// ---------------------------------------------------------------------------
// Approximate variational inequality distance.
// ---------------------------------------------------------------------------

void validate(const AviParams& params) {
  if (!(params.beta1 >= 0.0 && params.beta1 < 1.0))
    throw std::invalid_argument("AviParams: beta1 must lie in [0, 1)");
  if (!(params.beta2 >= 0.0)) throw std::invalid_argument("AviParams: beta2 must be >= 0");
  if (!(params.gamma >= 0.0)) throw std::invalid_argument("AviParams: gamma must be >= 0");
  if (!(params.kappa > 0.0)) throw std::invalid_argument("AviParams: kappa must be positive");
  if (!(params.spec.alpha_bar > 0.0) || !(params.spec.rho > 0.0))
    throw std::invalid_argument("AviParams: invalid level set spec");
}

namespace {

// Cached ingredients of g_r(u); g_r differs across r only through the data
// term weight beta2 r^gamma.
struct CandidateTerms {
  GridVector u;
  double xi_term = 0.0;
  double bregman = 0.0;
  double s_residual = 0.0;
};

CandidateTerms candidate_terms(const Problem& problem, const GridVector& u) {
  CandidateTerms t{u, 0.0, 0.0, 0.0};
  t.xi_term = problem.xi_pairing(u);
  t.bregman = problem.bregman_to_true(u);
  GridVector fu = apply(problem.op, u);
  if (problem.sim.kind == Similarity::Kind::wasserstein_1d &&
      fu.kind != GridVector::Kind::probability_measure)
    fu = as_measure(fu);
  t.s_residual = sim_value(problem.sim, fu, problem.v_exact);
  return t;
}

double g_value(const CandidateTerms& t, const AviParams& params, double weight) {
  return t.xi_term + params.beta1 * t.bregman +
         weight * std::pow(t.s_residual, params.kappa);
}

double data_weight(const AviParams& params, double r) {
  // pow(0,0) = 1 covers the gamma = 0 convention.
  return params.beta2 * std::pow(r, params.gamma);
}

// Subgradient (h-weighted) of u -> S(F(u), v_exact)^kappa; zero at S = 0.
GridVector sim_power_gradient(const Problem& problem, const GridVector& u, double kappa) {
  if (problem.sim.kind == Similarity::Kind::wasserstein_1d) {
    // W_1 through the CDF-difference potential (F = identity on the simplex).
    const std::size_t n = u.size();
    const double h = u.h;
    std::vector<double> sgn(n, 0.0);
    double c = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      c += u.values[k] - problem.v_exact.values[k];
      sgn[k] = c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0);
    }
    GridVector g = GridVector::zeros(n, h);
    double suffix = 0.0;
    for (std::size_t j = n; j-- > 0;) {
      if (j + 1 < n) suffix += sgn[j];
      g.values[j] = h * suffix;
    }
    const double w = sim_value(problem.sim, as_measure(u), problem.v_exact);
    if (w == 0.0) return GridVector::zeros(n, h);
    return scale(g, kappa * std::pow(w, kappa - 1.0));
  }
  GridVector r = axpy(apply(problem.op, u), -1.0, problem.v_exact);
  const double nr = norm(r);
  if (nr == 0.0) return GridVector::zeros(u.size(), u.h);
  const double q = problem.sim.kind == Similarity::Kind::norm_power ? problem.sim.q : 1.0;
  const double m = kappa * q;  // S^kappa = ||r||^{q kappa}
  GridVector g = adjoint_derivative_apply(problem.op, u, r);
  return scale(g, m * std::pow(nr, m - 2.0));
}

GridVector g_gradient(const Problem& problem, const AviParams& params, double weight,
                      const GridVector& u) {
  // grad g = (1-beta1) xi + beta1 grad Omega(u) + weight grad S^kappa.
  GridVector g = scale(xi_as_vector(problem), 1.0 - params.beta1);
  if (params.beta1 > 0.0) {
    const SubgradientElement om = subgradient(problem.pen, u);
    for (std::size_t i = 0; i < g.size(); ++i)
      g.values[i] += params.beta1 * om.coefficients[i];
  }
  if (weight > 0.0) {
    const GridVector sg = sim_power_gradient(problem, u, params.kappa);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] += weight * sg.values[i];
  }
  return g;
}

// Projected descent of g_r from a feasible start; feasibility is maintained by
// shrinking along the segment toward u_true (always well defined, since
// u_true is strictly feasible).
struct InnerMin {
  CandidateTerms best;
  bool budget_exhausted = false;
};

InnerMin minimize_g(const Problem& problem, const AviParams& params, double weight,
                    const GridVector& start, const SolverConfig& cfg) {
  InnerMin out{candidate_terms(problem, project_into_level_set(problem, params.spec, start)),
               false};
  double best_val = g_value(out.best, params, weight);
  GridVector x = out.best.u;
  double step = 1.0;
  const int iters = cfg.max_iterations;
  int it = 0;
  for (; it < iters; ++it) {
    GridVector grad;
    try {
      grad = g_gradient(problem, params, weight, x);
    } catch (const std::exception&) {
      break;  // boundary of the penalty domain; keep the best found
    }
    const double gn = norm(grad);
    if (gn == 0.0) break;
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      GridVector raw = axpy(x, -step / gn, grad);
      if (problem.sim.kind == Similarity::Kind::wasserstein_1d) raw = simplex_project(raw);
      GridVector cand = project_into_level_set(problem, params.spec, raw);
      CandidateTerms ct = candidate_terms(problem, cand);
      const double val = g_value(ct, params, weight);
      if (val < best_val - 1e-15 * std::max(1.0, std::abs(best_val))) {
        x = std::move(cand);
        best_val = val;
        out.best = std::move(ct);
        step *= 1.6;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  out.budget_exhausted = (it == iters);
  return out;
}

std::vector<GridVector> avi_starts(const Problem& problem, const SolverConfig& cfg) {
  std::vector<GridVector> starts;
  const std::size_t n = problem.u_true.size();
  const double h = problem.u_true.h;
  const double base = std::max(1.0, norm(problem.u_true));
  int idx = 0;
  for (double scalefac : {0.5, 2.0, 8.0}) {
    GridVector dir = random_unit_direction(n, h, cfg.seed + 101 * (++idx));
    starts.push_back(axpy(problem.u_true, scalefac * base, dir));
  }
  // A descent-aligned start: move against xi.
  GridVector xi_vec = xi_as_vector(problem);
  const double xin = norm(xi_vec);
  if (xin > 0.0) starts.push_back(axpy(problem.u_true, -base / xin, xi_vec));
  if (problem.sim.kind == Similarity::Kind::wasserstein_1d) {
    for (GridVector& s : starts) s = simplex_project(s);
  }
  return starts;
}

AviResult result_from_terms(const CandidateTerms& best, const AviParams& params, double weight,
                            bool budget_exhausted) {
  AviResult res;
  const double g = g_value(best, params, weight);
  res.value = g < 0.0 ? -g : 0.0;  // u_true pins min g <= 0
  res.minimizer = best.u;
  res.s_residual = best.s_residual;
  res.bregman = best.bregman;
  res.xi_term = best.xi_term;
  res.budget_exhausted = budget_exhausted;
  return res;
}

}  // namespace

AviResult avi_distance(const Problem& problem, const AviParams& params, double r,
                       const SolverConfig& cfg) {
  validate(params);
  if (r < 0.0) throw std::invalid_argument("avi_distance: r must be nonnegative");
  const double weight = data_weight(params, r);

  CandidateTerms best = candidate_terms(problem, problem.u_true);
  double best_val = g_value(best, params, weight);
  bool budget = false;
  for (const GridVector& s : avi_starts(problem, cfg)) {
    InnerMin run = minimize_g(problem, params, weight, s, cfg);
    budget = budget || run.budget_exhausted;
    const double val = g_value(run.best, params, weight);
    if (val < best_val) {
      best_val = val;
      best = std::move(run.best);
    }
  }
  return result_from_terms(best, params, weight, budget);
}

AviTable avi_table(const Problem& problem, const AviParams& params,
                   const std::vector<double>& r_grid, const SolverConfig& cfg) {
  validate(params);
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0)) throw std::invalid_argument("avi_table: r must be positive");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("avi_table: r grid must be increasing");
  }

  // Gather one candidate pool from inner minimizations across the grid, then
  // evaluate every tabulated r against the whole pool.  Pointwise monotonicity
  // of g_r in r then makes the table exactly nonincreasing.
  std::vector<CandidateTerms> pool;
  pool.reserve(r_grid.size() + 1);
  pool.push_back(candidate_terms(problem, problem.u_true));
  bool budget = false;
  std::vector<GridVector> starts = avi_starts(problem, cfg);
  const GridVector* warm = nullptr;
  for (double r : r_grid) {
    const double weight = data_weight(params, r);
    CandidateTerms local_best = pool.front();
    double local_val = g_value(local_best, params, weight);
    auto consider = [&](const GridVector& s) {
      InnerMin run = minimize_g(problem, params, weight, s, cfg);
      budget = budget || run.budget_exhausted;
      const double val = g_value(run.best, params, weight);
      if (val < local_val) {
        local_val = val;
        local_best = std::move(run.best);
      }
    };
    for (const GridVector& s : starts) consider(s);
    if (warm) consider(*warm);
    pool.push_back(local_best);
    warm = &pool.back().u;
  }

  std::vector<AviResult> rows;
  rows.reserve(r_grid.size());
  std::vector<std::pair<double, double>> entries;
  entries.reserve(r_grid.size());
  for (double r : r_grid) {
    const double weight = data_weight(params, r);
    const CandidateTerms* best = &pool.front();
    double best_val = g_value(*best, params, weight);
    for (const CandidateTerms& c : pool) {
      const double v = g_value(c, params, weight);
      if (v < best_val) {
        best_val = v;
        best = &c;
      }
    }
    AviResult res = result_from_terms(*best, params, weight, budget);
    entries.emplace_back(r, res.value);
    rows.push_back(std::move(res));
  }
  return AviTable{DistanceTable(std::move(entries)), std::move(rows)};
}

// ---------------------------------------------------------------------------
// Psi / Phi machinery.
// ---------------------------------------------------------------------------

double psi(double r, const DistanceTable& table, double p, double kappa, double gamma,
           bool* extrapolated) {
  if (!(r > 0.0)) throw std::invalid_argument("psi: r must be positive");
  if (!(kappa > 0.0 && kappa < p)) throw std::invalid_argument("psi: need 0 < kappa < p");
  const double d = table.value(r, extrapolated);
  return std::pow(d, (p - kappa) / kappa) * std::pow(r, -gamma * p / kappa);
}

double phi(double r, const DistanceTable& table, double kappa, double gamma,
           bool* extrapolated) {
  if (!(r > 0.0)) throw std::invalid_argument("phi: r must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("phi: kappa must be positive");
  const double d = table.value(r, extrapolated);
  return std::pow(d, 1.0 / kappa) * std::pow(r, -gamma / kappa);
}

double invert_monotone(const std::function<double(double)>& f, double target, double lo,
                       double hi) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("invert_monotone: bad bracket");
  double flo = f(lo), fhi = f(hi);
  if (!(flo >= target && target >= fhi))
    throw std::invalid_argument("invert_monotone: target not bracketed");
  if (flo == target) return lo;
  if (fhi == target) return hi;
  double llo = std::log(lo), lhi = std::log(hi);
  for (int it = 0; it < 200; ++it) {
    const double lmid = 0.5 * (llo + lhi);
    const double r = std::exp(lmid);
    const double fr = f(r);
    if (std::abs(fr - target) <= 1e-12 * std::abs(target)) return r;
    (fr > target ? llo : lhi) = lmid;
    if (lhi - llo <= 1e-15 * std::max(1.0, std::abs(lhi))) break;
  }
  return std::exp(0.5 * (llo + lhi));
}

double choose_alpha_apriori(double delta, double p, double kappa, double c) {
  if (!(kappa > 0.0 && kappa < p))
    throw std::domain_error("choose_alpha_apriori: need 0 < kappa < p");
  if (!(delta > 0.0 && c > 0.0))
    throw std::invalid_argument("choose_alpha_apriori: delta and c must be positive");
  return c * std::pow(delta, p - kappa);
}

AlphaPhiResult choose_alpha_phi(double delta, const DistanceTable& table, double p,
                                double kappa, double gamma) {
  if (!(delta > 0.0)) throw std::invalid_argument("choose_alpha_phi: delta must be positive");
  if (!table.strictly_decreasing() || !table.strictly_positive())
    throw std::invalid_argument(
        "choose_alpha_phi: table must be strictly decreasing and positive");

  const double r_lo = table.r_min(), r_hi = table.r_max();
  const auto psi_of = [&](double r) { return psi(r, table, p, kappa, gamma); };
  const double alpha_lo = psi_of(r_hi);
  const double alpha_hi = psi_of(r_lo);
  const auto rhs = [&](double alpha) {
    const double r = invert_monotone(psi_of, alpha, r_lo, r_hi);
    return alpha * table.value(r);
  };
  const double target = std::pow(delta, p);
  if (target < rhs(alpha_lo) || target > rhs(alpha_hi))
    throw std::domain_error("choose_alpha_phi: delta outside the representable range");

  double llo = std::log(alpha_lo), lhi = std::log(alpha_hi);
  for (int it = 0; it < 200; ++it) {
    const double alpha = std::exp(0.5 * (llo + lhi));
    const double v = rhs(alpha);
    if (std::abs(v - target) <= 1e-13 * target) break;
    (v < target ? llo : lhi) = 0.5 * (llo + lhi);
    if (lhi - llo < 1e-15) break;
  }
  AlphaPhiResult out;
  out.alpha = std::exp(0.5 * (llo + lhi));
  out.r_star = invert_monotone(psi_of, out.alpha, r_lo, r_hi);
  out.phi_residual = std::abs(phi(out.r_star, table, kappa, gamma) - delta) / delta;
  return out;
}

PredictedRate predicted_rate(double delta, const DistanceTable& table, double kappa,
                             double gamma) {
  if (!table.strictly_decreasing() || !table.strictly_positive())
    throw std::invalid_argument("predicted_rate: table must be strictly decreasing, positive");
  const auto phi_of = [&](double r) { return phi(r, table, kappa, gamma); };
  PredictedRate out;
  out.r_star = invert_monotone(phi_of, delta, table.r_min(), table.r_max());
  out.value = table.value(out.r_star);
  const double lhs = std::pow(delta, kappa) / out.value;
  const double rhsv = std::pow(out.r_star, -gamma);
  out.identity_residual = std::abs(lhs - rhsv) / rhsv;
  return out;
}

PredictedRate predicted_rate(double delta, const PowerLawMajorant& majorant, double kappa,
                             double gamma) {
  if (!(majorant.a > 0.0 && majorant.b > 0.0))
    throw std::invalid_argument("predicted_rate: majorant needs a > 0, b > 0");
  PredictedRate out;
  // Phibar(r) = a^{1/kappa} r^{-gamma(b+1)/kappa}
  out.r_star =
      std::pow(delta * std::pow(majorant.a, -1.0 / kappa), -kappa / (gamma * (majorant.b + 1.0)));
  out.value = majorant.a * std::pow(out.r_star, -majorant.b * gamma);
  const double lhs = std::pow(delta, kappa) / out.value;
  const double rhsv = std::pow(out.r_star, -gamma);
  out.identity_residual = std::abs(lhs - rhsv) / rhsv;
  return out;
}

PowerLawMajorant vi_to_avi_majorant(double beta2, double gamma, double kappa, double mu) {
  if (!(mu > kappa)) throw std::domain_error("vi_to_avi_majorant: need mu > kappa");
  if (!(beta2 >= 0.0 && gamma > 0.0 && kappa > 0.0))
    throw std::invalid_argument("vi_to_avi_majorant: bad constants");
  PowerLawMajorant m;
  m.b = kappa / (mu - kappa);
  m.a = std::pow(mu / kappa, kappa / (mu - kappa)) * (mu / (mu - kappa)) * beta2;
  return m;
}

double holder_kappa(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::domain_error("holder_kappa: mu must lie in (0, 1]");
  return 2.0 * mu / (1.0 + mu);
}

double holder_mu_bound(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::domain_error("holder_mu_bound: kappa must lie in (0, 1]");
  return kappa / (2.0 - kappa);
}

// ---------------------------------------------------------------------------
// Rate experiments.
// ---------------------------------------------------------------------------

RateFit loglog_fit(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("loglog_fit: need at least two samples");
  double sx = 0.0, sy = 0.0;
  for (const auto& [d, e] : samples) {
    if (!(d > 0.0 && e > 0.0))
      throw std::invalid_argument("loglog_fit: samples must be positive");
    sx += std::log(d);
    sy += std::log(e);
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [d, e] : samples) {
    const double dx = std::log(d) - mx;
    const double dy = std::log(e) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_fit: deltas must be distinct");
  RateFit fit;
  fit.samples = samples;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

GridVector log_uniform_direction(std::size_t n, double h, std::uint64_t seed) {
  Rng rng(seed);
  GridVector d = GridVector::zeros(n, h);
  for (std::size_t k = 0; k < n; ++k)
    d.values[k] = rng.sign() / std::sqrt(static_cast<double>(k + 1));
  return scale(d, 1.0 / norm(d));
}

GridVector noisy_data_along(const Similarity& sim, const GridVector& v_exact, double delta,
                            const GridVector& direction) {
  if (!(delta > 0.0)) throw std::invalid_argument("noisy_data_along: delta must be positive");
  if (sim.kind == Similarity::Kind::wasserstein_1d)
    throw std::invalid_argument("noisy_data_along: norm-type similarities only");
  const double target =
      sim.kind == Similarity::Kind::norm ? delta : std::pow(delta, 1.0 / sim.q);
  GridVector w = direction;
  for (int refine = 0; refine < 2; ++refine) {
    const double measured = norm(w);
    if (measured > 0.0) w = scale(w, target / measured);
  }
  return axpy(v_exact, 1.0, w);
}

RateRun empirical_rate(const Problem& problem, const AlphaRule& rule,
                       const std::vector<double>& delta_grid, const SolverConfig& cfg,
                       NoiseProfile profile, std::uint64_t noise_seed) {
  if (delta_grid.size() < 5)
    throw std::invalid_argument("empirical_rate: need at least five noise levels");
  double dmin = kInf, dmax = 0.0;
  for (double d : delta_grid) {
    if (!(d > 0.0)) throw std::invalid_argument("empirical_rate: deltas must be positive");
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (dmax / dmin < 99.999)
    throw std::invalid_argument("empirical_rate: deltas must span at least two decades");

  const bool norm_kind = problem.sim.kind != Similarity::Kind::wasserstein_1d;
  GridVector direction = GridVector::zeros(problem.v_exact.size(), problem.v_exact.h);
  if (norm_kind) {
    direction = profile == NoiseProfile::white
                    ? random_unit_direction(problem.v_exact.size(), problem.v_exact.h,
                                            noise_seed)
                    : log_uniform_direction(problem.v_exact.size(), problem.v_exact.h,
                                            noise_seed);
  }

  RateRun run;
  std::vector<std::pair<double, double>> usable;
  for (double delta : delta_grid) {
    RatePoint pt;
    pt.delta = delta;
    try {
      const GridVector v_delta =
          norm_kind ? noisy_data_along(problem.sim, problem.v_exact, delta, direction)
                    : make_noisy_data(problem.sim, problem.v_exact, delta, noise_seed);
      pt.alpha = rule(delta);
      if (!(pt.alpha > 0.0)) throw std::domain_error("empirical_rate: alpha rule returned <= 0");
      const SolveResult sol = minimize_tikhonov(problem, v_delta, pt.alpha, cfg);
      pt.converged = sol.converged;
      pt.bregman_error = problem.bregman_to_true(sol.minimizer);
      GridVector fu = apply(problem.op, sol.minimizer);
      if (problem.sim.kind == Similarity::Kind::wasserstein_1d &&
          fu.kind != GridVector::Kind::probability_measure)
        fu = as_measure(fu);
      pt.s_residual = sim_value(problem.sim, fu, problem.v_exact);
      pt.usable = std::isfinite(pt.bregman_error) && pt.bregman_error > 0.0;
    } catch (const std::exception&) {
      pt.usable = false;
    }
    if (pt.usable) usable.emplace_back(pt.delta, pt.bregman_error);
    run.points.push_back(pt);
  }
  if (usable.size() < 4)
    throw std::runtime_error("empirical_rate: fewer than four usable points");
  run.fit = loglog_fit(usable);
  return run;
}

double rates_lemma_bound(const Problem& problem, const AviParams& params, double r,
                         double delta, double alpha, double d_value) {
  const double p = problem.p;
  const double kappa = params.kappa;
  if (!(kappa < p)) throw std::domain_error("rates_lemma_bound: need kappa < p");
  const double s = problem.s_constant();
  const double ck = c_p(kappa);
  const double k1 = 2.0 / (1.0 - params.beta1);
  const double k3 = 1.0 / (1.0 - params.beta1);
  const double base = ck * params.beta2 * std::pow(s, kappa);
  const double k2 = 2.0 * std::pow(base, p / (p - kappa)) *
                    std::pow(kappa / p, kappa / (p - kappa)) * (p - kappa) /
                    (p * (1.0 - params.beta1));
  return k1 * std::pow(delta, p) / alpha +
         k2 * std::pow(alpha, kappa / (p - kappa)) * std::pow(r, params.gamma * p / (p - kappa)) +
         k3 * d_value;
}

// ---------------------------------------------------------------------------
// Directional-derivative kappa bound.
// ---------------------------------------------------------------------------

namespace {

// Richardson extrapolation assuming an error expansion in integer powers of t
// and a constant grid ratio.
double richardson_limit(const std::vector<double>& t, const std::vector<double>& q) {
  std::vector<double> row = q;
  std::size_t n = row.size();
  for (std::size_t level = 1; level < n; ++level) {
    std::vector<double> next(n - level);
    for (std::size_t i = 0; i + level < n; ++i) {
      const double rho = t[i] / t[i + level];  // > 1 for decreasing grids
      const double w = std::pow(rho, static_cast<double>(level));
      next[i] = (w * row[i + 1] - row[i]) / (w - 1.0);
    }
    row = std::move(next);
  }
  return row.front();
}

}  // namespace

KappaBoundReport kappa_upper_bound_check(const Problem& problem, const LevelSetSpec& spec,
                                         const GridVector& direction, double q,
                                         const std::vector<double>& t_grid,
                                         std::optional<double> configured_kappa) {
  if (!(q > 0.0)) throw std::invalid_argument("kappa_upper_bound_check: q must be positive");
  if (t_grid.size() < 2)
    throw std::invalid_argument("kappa_upper_bound_check: need at least two step sizes");
  KappaBoundReport rep;
  rep.q = q;
  rep.xi_direction = apply(problem.xi, direction);
  if (!(rep.xi_direction < 0.0))
    throw std::domain_error("kappa_upper_bound_check: xi(direction) must be negative");

  const double omega0 = problem.omega_true();
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end(), std::greater<double>());
  std::vector<double> qo, qs;
  for (double t : ts) {
    if (!(t > 0.0)) throw std::invalid_argument("kappa_upper_bound_check: t must be positive");
    const GridVector u_t = axpy(problem.u_true, t, direction);
    if (!level_set_member(problem, spec, u_t))
      throw std::domain_error("kappa_upper_bound_check: ray leaves the level set");
    QuotientSample samp;
    samp.t = t;
    samp.omega_quotient = (penalty_value(problem.pen, u_t) - omega0) / t;
    const double s = sim_value(problem.sim, apply(problem.op, u_t), problem.v_exact);
    samp.s_quotient = std::pow(s, q) / t;
    rep.samples.push_back(samp);
    qo.push_back(samp.omega_quotient);
    qs.push_back(samp.s_quotient);
  }
  rep.l_omega = richardson_limit(ts, qo);
  rep.l_s = richardson_limit(ts, qs);
  rep.l_omega_matches_xi =
      std::abs(rep.l_omega - rep.xi_direction) <= 1e-6 * std::max(1.0, std::abs(rep.xi_direction));
  rep.kappa_upper_bound = q;
  rep.configured_kappa_violates = configured_kappa.has_value() && *configured_kappa > q;
  return rep;
}

// ---------------------------------------------------------------------------
// Level-set sampling.
// ---------------------------------------------------------------------------

std::vector<GridVector> sample_level_set(const Problem& problem, const LevelSetSpec& spec,
                                         int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_level_set: count must be positive");
  std::vector<GridVector> points;
  points.reserve(static_cast<std::size_t>(count));
  points.push_back(problem.u_true);
  const std::size_t n = problem.u_true.size();
  const double h = problem.u_true.h;
  int made = 1;
  for (std::uint64_t k = 0; made < count; ++k) {
    GridVector dir = random_unit_direction(n, h, seed + 977 * k);
    double t_hi = 1.0;
    int grow = 0;
    while (level_set_member(problem, spec, axpy(problem.u_true, t_hi, dir)) && grow++ < 80)
      t_hi *= 2.0;
    double lo = 0.0, hi = t_hi;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (level_set_member(problem, spec, axpy(problem.u_true, mid, dir)) ? lo : hi) = mid;
    }
    if (lo > 0.0) {
      points.push_back(axpy(problem.u_true, lo, dir));
      ++made;
      if (made < count) {
        points.push_back(axpy(problem.u_true, 0.5 * lo, dir));
        ++made;
      }
    }
    if (k > static_cast<std::uint64_t>(8 * count)) break;  // degenerate instance guard
  }
  return points;
}

double k_alpha_bound(const Problem& problem, const LevelSetSpec& spec, int count,
                     std::uint64_t seed) {
  double worst = 0.0;
  for (const GridVector& u : sample_level_set(problem, spec, count, seed))
    worst = std::max(worst, norm(axpy(u, -1.0, problem.u_true)));
  return 1.5 * worst;
}

}  // namespace tikhlab
