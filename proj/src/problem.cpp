#include "tikhlab/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tikhlab {

double Problem::omega_true() const { return penalty_value(pen, u_true); }

double Problem::s_constant() const { return quasi_triangle_constant(sim); }

double Problem::xi_pairing(const GridVector& u) const {
  return apply(xi, axpy(u, -1.0, u_true));
}

double Problem::bregman_to_true(const GridVector& u) const {
  return bregman(pen, u, u_true, xi);
}

Problem make_problem(ForwardOperator op, Penalty pen, Similarity sim, GridVector u_true,
                     double p) {
  if (!(p > 0.0)) throw std::invalid_argument("make_problem: p must be positive");
  GridVector v_exact = apply(op, u_true);
  if (sim.kind == Similarity::Kind::wasserstein_1d &&
      v_exact.kind != GridVector::Kind::probability_measure)
    throw std::invalid_argument("make_problem: Wasserstein similarity needs measure-valued data");
  SubgradientElement xi = subgradient(pen, u_true);
  return Problem{std::move(op), pen, sim, std::move(u_true), std::move(v_exact), p,
                 std::move(xi)};
}

double rho_default(double omega_udagger, double p, double s, double margin) {
  if (!(margin > 1.0)) throw std::invalid_argument("rho_default: margin must exceed 1");
  if (omega_udagger < 0.0) throw std::invalid_argument("rho_default: Omega(u_true) < 0");
  if (!(s >= 1.0)) throw std::invalid_argument("rho_default: s must be >= 1");
  if (omega_udagger == 0.0) return margin;
  return margin * c_p(p) * std::pow(s, p) * omega_udagger;
}

LevelSetSpec make_level_set_spec(const Problem& problem, double alpha_bar, double rho_margin) {
  if (!(alpha_bar > 0.0)) throw std::invalid_argument("make_level_set_spec: alpha_bar <= 0");
  LevelSetSpec spec;
  spec.alpha_bar = alpha_bar;
  spec.rho = rho_default(problem.omega_true(), problem.p, problem.s_constant(), rho_margin);
  return spec;
}

double tikhonov_value(const Problem& problem, const GridVector& u, const GridVector& v_data,
                      double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tikhonov_value: alpha must be positive");
  GridVector fu = apply(problem.op, u);
  if (problem.sim.kind == Similarity::Kind::wasserstein_1d &&
      fu.kind != GridVector::Kind::probability_measure) {
    // Out of the similarity's domain means out of D; the objective is +inf.
    try {
      fu = as_measure(fu);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  }
  const double s = sim_value(problem.sim, fu, v_data);
  return std::pow(s, problem.p) + alpha * penalty_value(problem.pen, u);
}

bool level_set_member(const Problem& problem, const LevelSetSpec& spec, const GridVector& u) {
  const double budget = spec.rho * spec.alpha_bar;
  const double t = tikhonov_value(problem, u, problem.v_exact, spec.alpha_bar);
  return t <= budget + 1e-12 * std::max(1.0, budget);
}

GridVector project_into_level_set(const Problem& problem, const LevelSetSpec& spec,
                                  const GridVector& u) {
  if (level_set_member(problem, spec, u)) return u;
  // rho > c_p s^p Omega(u_true) >= Omega(u_true) makes t = 0 strictly feasible.
  double lo = 0.0, hi = 1.0;
  const GridVector dir = axpy(u, -1.0, problem.u_true);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const GridVector cand = axpy(problem.u_true, mid, dir);
    if (level_set_member(problem, spec, cand))
      lo = mid;
    else
      hi = mid;
  }
  return axpy(problem.u_true, lo, dir);
}

}  // namespace tikhlab
