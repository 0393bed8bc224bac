#ifndef TIKHLAB_ANALYSIS_HPP
#define TIKHLAB_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "tikhlab/distance_table.hpp"
#include "tikhlab/problem.hpp"
#include "tikhlab/solver.hpp"

namespace tikhlab {

// ---------------------------------------------------------------------------
// Approximate source condition distance
//   dtilde(r) = min { ||xi - F'(u_true)^* eta|| : ||eta|| <= r }.
// ---------------------------------------------------------------------------

struct AscResult {
  double value = 0.0;
  GridVector eta;
};

/// Closed-form componentwise evaluation for diagonal operators, dense normal
/// equations (F'F'* + lambda I) eta = F' xi with bisection on lambda >= 0
/// otherwise.
AscResult asc_distance(const Problem& problem, double r);

/// The generic dense route, usable on any linear(ized) operator; exists so the
/// spectral shortcut can be cross-checked against it.
AscResult asc_distance_dense(const Problem& problem, double r);

DistanceTable asc_table(const Problem& problem, const std::vector<double>& r_grid);

// ---------------------------------------------------------------------------
// Approximate variational inequality distance
//   d(r) = -min over the level set of
//          xi(u - u_true) + beta1 B(u, u_true) + beta2 r^gamma S(F(u),v0)^kappa.
// The numerical value is a certified lower bound: candidates are feasible
// points, and u_true itself is always among them, which pins d_num(r) >= 0.
// ---------------------------------------------------------------------------

struct AviParams {
  double beta1 = 0.0;   // in [0, 1)
  double beta2 = 0.0;   // >= 0
  double gamma = 1.0;   // >= 0
  double kappa = 1.0;   // > 0
  LevelSetSpec spec;
};

void validate(const AviParams& params);

struct AviResult {
  double value = 0.0;
  GridVector minimizer;
  double s_residual = 0.0;  // S(F(u), v0) at the minimizer
  double bregman = 0.0;
  double xi_term = 0.0;     // xi(u - u_true)
  bool budget_exhausted = false;
};

AviResult avi_distance(const Problem& problem, const AviParams& params, double r,
                       const SolverConfig& cfg);

/// Table over an r-grid evaluated against one shared candidate pool, which
/// makes the tabulated values exactly nonincreasing in r.
struct AviTable {
  DistanceTable table;
  std::vector<AviResult> rows;
};

AviTable avi_table(const Problem& problem, const AviParams& params,
                   const std::vector<double>& r_grid, const SolverConfig& cfg);

// ---------------------------------------------------------------------------
// Parameter choice machinery.
// ---------------------------------------------------------------------------

/// Psi(r) = d(r)^{(p-kappa)/kappa} r^{-gamma p / kappa}
double psi(double r, const DistanceTable& table, double p, double kappa, double gamma,
           bool* extrapolated = nullptr);
/// Phi(r) = d(r)^{1/kappa} r^{-gamma/kappa}
double phi(double r, const DistanceTable& table, double kappa, double gamma,
           bool* extrapolated = nullptr);

/// Bisection in log r for a decreasing f with f(lo) >= target >= f(hi).
double invert_monotone(const std::function<double(double)>& f, double target, double lo,
                       double hi);

/// alpha = c * delta^{p-kappa}; requires 0 < kappa < p.
double choose_alpha_apriori(double delta, double p, double kappa, double c);

struct AlphaPhiResult {
  double alpha = 0.0;
  double r_star = 0.0;       // Psi^{-1}(alpha) = Phi^{-1}(delta)
  double phi_residual = 0.0; // |Phi(r_star) - delta| / delta
};

/// Solves delta^p = alpha d(Psi^{-1}(alpha)) for alpha by bisection; the right
/// side is strictly increasing in alpha for a strictly decreasing table.
AlphaPhiResult choose_alpha_phi(double delta, const DistanceTable& table, double p,
                                double kappa, double gamma);

struct PredictedRate {
  double value = 0.0;              // d(Phi^{-1}(delta))
  double r_star = 0.0;             // Phi^{-1}(delta)
  double identity_residual = 0.0;  // relative defect of delta^kappa/value = r*^{-gamma}
};

PredictedRate predicted_rate(double delta, const DistanceTable& table, double kappa,
                             double gamma);

/// Power-law majorant dbar(r) = a r^{-b gamma}.
struct PowerLawMajorant {
  double a = 1.0;
  double b = 1.0;
};

/// Closed-form dbar(Phibar^{-1}(delta)) = a^{1/(b+1)} delta^{b kappa/(b+1)}.
PredictedRate predicted_rate(double delta, const PowerLawMajorant& majorant, double kappa,
                             double gamma);

/// Majorant transfer: a variational inequality at exponent kappa yields an
/// approximate inequality at any mu in (kappa, p) whose distance function is
/// majorized by a r^{-b gamma} with b = kappa/(mu-kappa).
PowerLawMajorant vi_to_avi_majorant(double beta2, double gamma, double kappa, double mu);

/// Hilbert-space Hoelder interplay: kappa = 2 mu / (1 + mu) for mu in (0,1].
double holder_kappa(double mu);
/// Converse upper bound kappa/(2-kappa) on admissible mu for kappa in (0,1].
double holder_mu_bound(double kappa);

// ---------------------------------------------------------------------------
// Rate experiments and bounds.
// ---------------------------------------------------------------------------

struct RateFit {
  std::vector<std::pair<double, double>> samples;  // (delta, error)
  double slope = 0.0;      // fitted d log(error) / d log(delta)
  double intercept = 0.0;  // in log space
  double r_squared = 0.0;
};

/// Least squares line through (log delta, log error); nonpositive errors are
/// rejected.
RateFit loglog_fit(const std::vector<std::pair<double, double>>& samples);

enum class NoiseProfile {
  white,        // seeded Gaussian unit direction
  log_uniform,  // components ~ k^{-1/2} with seeded signs: equal energy per
                // spectral octave of a polynomially decaying spectrum
};

struct RatePoint {
  double delta = 0.0;
  double alpha = 0.0;
  double bregman_error = 0.0;
  double s_residual = 0.0;
  bool converged = false;
  bool usable = false;  // entered the fit
};

struct RateRun {
  RateFit fit;
  std::vector<RatePoint> points;
};

using AlphaRule = std::function<double(double delta)>;

/// For each delta: build data at exact level delta (one fixed seeded noise
/// direction across the grid), choose alpha, minimize, measure the Bregman
/// distance to u_true; then fit the log-log slope.  Needs at least five
/// deltas spanning two decades and at least four usable points.
RateRun empirical_rate(const Problem& problem, const AlphaRule& rule,
                       const std::vector<double>& delta_grid, const SolverConfig& cfg,
                       NoiseProfile profile = NoiseProfile::white,
                       std::uint64_t noise_seed = 1);

/// Error-split bound K1 delta^p/alpha + K2 alpha^{kappa/(p-kappa)}
/// r^{gamma p/(p-kappa)} + K3 d_value with
///   K1 = 2/(1-beta1),  K3 = 1/(1-beta1),
///   K2 = 2 (c_kappa beta2 s^kappa)^{p/(p-kappa)} (kappa/p)^{kappa/(p-kappa)}
///        (p-kappa)/(p (1-beta1)).
double rates_lemma_bound(const Problem& problem, const AviParams& params, double r,
                         double delta, double alpha, double d_value);

// ---------------------------------------------------------------------------
// Directional-derivative bound on kappa.
// ---------------------------------------------------------------------------

struct QuotientSample {
  double t = 0.0;
  double omega_quotient = 0.0;  // (Omega(u_true + t u) - Omega(u_true)) / t
  double s_quotient = 0.0;      // S(F(u_true + t u), F(u_true))^q / t
};

struct KappaBoundReport {
  double l_omega = 0.0;  // Richardson-extrapolated limits
  double l_s = 0.0;
  double xi_direction = 0.0;
  bool l_omega_matches_xi = false;
  double q = 0.0;
  double kappa_upper_bound = 0.0;  // = q when the limits exist and match
  bool configured_kappa_violates = false;
  std::vector<QuotientSample> samples;
};

/// Requires xi(direction) < 0 and membership of u_true + t direction in the
/// level set for every t of the grid.
KappaBoundReport kappa_upper_bound_check(const Problem& problem, const LevelSetSpec& spec,
                                         const GridVector& direction, double q,
                                         const std::vector<double>& t_grid,
                                         std::optional<double> configured_kappa = {});

// ---------------------------------------------------------------------------
// Level-set sampling.
// ---------------------------------------------------------------------------

/// Feasible points found by walking seeded rays from u_true to the level-set
/// boundary (boundary hits plus mid-ray interior points).
std::vector<GridVector> sample_level_set(const Problem& problem, const LevelSetSpec& spec,
                                         int count, std::uint64_t seed);

/// Sampled bound on ||u - u_true|| over the level set, inflated by 1.5.
double k_alpha_bound(const Problem& problem, const LevelSetSpec& spec, int count,
                     std::uint64_t seed);

/// Unit direction whose spectral energy is log-uniform across modes.
GridVector log_uniform_direction(std::size_t n, double h, std::uint64_t seed);

/// Exact-level noisy data along a prescribed unit direction (norm kinds).
GridVector noisy_data_along(const Similarity& sim, const GridVector& v_exact, double delta,
                            const GridVector& direction);

}  // namespace tikhlab

#endif
