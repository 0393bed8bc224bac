#ifndef TIKHLAB_PROBLEM_HPP
#define TIKHLAB_PROBLEM_HPP

#include "tikhlab/core.hpp"
#include "tikhlab/forward_operator.hpp"
#include "tikhlab/penalty.hpp"
#include "tikhlab/similarity.hpp"

namespace tikhlab {

/// One complete test instance: forward operator, penalty, similarity, exact
/// solution u_true with exact data v_exact = F(u_true), residual exponent p,
/// and a subgradient xi of the penalty at u_true.
struct Problem {
  ForwardOperator op;
  Penalty pen;
  Similarity sim;
  GridVector u_true;
  GridVector v_exact;
  double p = 2.0;
  SubgradientElement xi;

  double omega_true() const;              // Omega(u_true)
  double s_constant() const;              // quasi-triangle constant of sim
  double xi_pairing(const GridVector& u) const;  // xi(u - u_true)
  double bregman_to_true(const GridVector& u) const;
};

/// Builds a problem, computing v_exact and xi and validating the pieces fit
/// together (F(u_true) reproduces v_exact to 1e-12).
Problem make_problem(ForwardOperator op, Penalty pen, Similarity sim, GridVector u_true,
                     double p);

/// Level set parameters for M_{alpha_bar}(rho * alpha_bar).
struct LevelSetSpec {
  double alpha_bar = 1.0;
  double rho = 1.0;
};

/// Default admissible rho = margin * c_p * s^p * Omega(u_true) (margin > 1),
/// or just margin when Omega(u_true) = 0.
double rho_default(double omega_udagger, double p, double s, double margin = 1.1);

/// Validated spec with rho from rho_default.
LevelSetSpec make_level_set_spec(const Problem& problem, double alpha_bar,
                                 double rho_margin = 1.1);

/// The Tikhonov-type objective S(F(u), v_data)^p + alpha * Omega(u).
double tikhonov_value(const Problem& problem, const GridVector& u, const GridVector& v_data,
                      double alpha);

/// Membership in M_{alpha_bar}(rho alpha_bar), i.e. the exact-data objective
/// at alpha_bar does not exceed rho * alpha_bar (1e-12 relative slack).
bool level_set_member(const Problem& problem, const LevelSetSpec& spec, const GridVector& u);

/// Largest t in [0, 1] with u_true + t (u - u_true) in the level set, found by
/// bisection; t = 0 (u_true itself) is strictly feasible by construction.
GridVector project_into_level_set(const Problem& problem, const LevelSetSpec& spec,
                                  const GridVector& u);

}  // namespace tikhlab

#endif
