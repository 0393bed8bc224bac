#ifndef TIKHLAB_PENALTY_HPP
#define TIKHLAB_PENALTY_HPP

#include "tikhlab/core.hpp"

namespace tikhlab {

/// Convex stabilizing functional Omega : U -> [0, inf].
///
///  squared_norm      Omega(u) = ||u||^2
///  power_norm(t)     Omega(u) = h * sum |u_i|^t,  t in (1, 2]
///  negative_entropy  generalized Kullback-Leibler divergence from the
///                    uniform density ubar = 1/(n h):
///                      Omega(u) = h * sum ( u_i log(u_i/ubar) - u_i + ubar ),
///                    +inf for vectors with negative entries, 0 log 0 := 0.
///                    Minimum value 0 at the uniform measure.
struct Penalty {
  enum class Kind { squared_norm, power_norm, negative_entropy };

  Kind kind = Kind::squared_norm;
  double t = 2.0;  // power_norm exponent

  static Penalty squared_norm();
  static Penalty power_norm(double t);
  static Penalty negative_entropy();
};

/// Omega(u); +inf encoded as std::numeric_limits<double>::infinity().
double penalty_value(const Penalty& pen, const GridVector& u);

/// Single-valued subgradient at u under the h-weighted pairing.  Throws
/// std::domain_error where the subdifferential is empty (entropy at a
/// non-strictly-positive point).
SubgradientElement subgradient(const Penalty& pen, const GridVector& u);

/// Bregman distance Omega(u) - Omega(u_ref) - xi(u - u_ref) for
/// xi in the subdifferential of Omega at u_ref.  Nonnegative by convexity.
double bregman(const Penalty& pen, const GridVector& u, const GridVector& u_ref,
               const SubgradientElement& xi);

}  // namespace tikhlab

#endif
