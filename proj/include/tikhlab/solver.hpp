#ifndef TIKHLAB_SOLVER_HPP
#define TIKHLAB_SOLVER_HPP

#include <cstdint>

#include "tikhlab/problem.hpp"

namespace tikhlab {

struct SolverConfig {
  enum class InitialPoint { zero, u_true_perturbed, data_backprojection };

  int max_iterations = 20000;
  /// Absolute tolerance on the h-norm of the composite gradient mapping.
  double gradient_tolerance = 1e-10;
  double backtrack_shrink = 0.5;
  double sufficient_decrease = 1e-4;
  /// Additional solver runs from perturbed initial points (used for p < 1 and
  /// nonlinear operators); the best objective wins, ties by lowest index.
  int restarts = 0;
  InitialPoint initial_point = InitialPoint::zero;
  double perturbation_scale = 0.1;
  std::uint64_t seed = 0;
};

struct SolveResult {
  GridVector minimizer;
  double objective = 0.0;   // tikhonov_value at the minimizer, recomputed
  int iterations = 0;       // total across restarts
  bool converged = false;   // first-order stationarity within tolerance
  int best_restart = 0;
};

/// Minimizes S(F(u), v_data)^p + alpha Omega(u) over the problem's domain.
/// Norm-type residuals run a monotone accelerated proximal-gradient scheme
/// with backtracking; Wasserstein residuals run projected subgradient descent
/// on the probability simplex (F must be the identity there).  For p < 1 or
/// nonlinear F the objective is nonconvex: configure restarts and read the
/// result as the best local minimizer found, not a global certificate.
SolveResult minimize_tikhonov(const Problem& problem, const GridVector& v_data, double alpha,
                              const SolverConfig& cfg);

/// Unique solution of (A*A + alpha I) u = A* v_data for linear A, p = 2 and
/// the squared-norm penalty; spectral for diagonal operators, dense Cholesky
/// otherwise.
GridVector closed_form_linear_l2(const ForwardOperator& op, const GridVector& v_data,
                                 double alpha);

/// Data at exact similarity level delta: S(v_delta, v_exact) = delta.
/// Norm kinds scale a seeded unit direction; the Wasserstein kind shifts mass
/// between two support points, calibrated by bisection to |W - delta| <= 1e-10.
GridVector make_noisy_data(const Similarity& sim, const GridVector& v_exact, double delta,
                           std::uint64_t direction_seed);

/// Sufficient condition from the a-priori parameter choice analysis:
///   alpha <= alpha_bar  and  delta^p / alpha <= rho/(2 c_p s^p) - Omega(u_true)/2.
/// When true, minimizers over noisy data at level delta are guaranteed to lie
/// in M_{alpha_bar}(rho alpha_bar).
bool apriori_validity(double delta, double alpha, const LevelSetSpec& spec,
                      const Problem& problem);

/// Euclidean projection onto {u >= 0, h sum u = 1} in the h-weighted norm.
GridVector simplex_project(const GridVector& z);

}  // namespace tikhlab

#endif
