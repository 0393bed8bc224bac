#ifndef TIKHLAB_SIMILARITY_HPP
#define TIKHLAB_SIMILARITY_HPP

#include "tikhlab/core.hpp"

namespace tikhlab {

/// Similarity functional S : V x V -> [0, inf).  Every kind is symmetric,
/// vanishes exactly on the diagonal and obeys the quasi-triangle inequality
///   S(v1,v2) <= s S(v1,v3) + s S(v3,v2)
/// with the constant reported by quasi_triangle_constant().
struct Similarity {
  enum class Kind { norm, norm_power, wasserstein_1d };

  Kind kind = Kind::norm;
  /// Exponent q for norm_power (q in [1,4]) and wasserstein_1d (q >= 1).
  double q = 1.0;

  static Similarity norm();
  static Similarity norm_power(double q);
  static Similarity wasserstein(double q);
};

double sim_value(const Similarity& sim, const GridVector& v1, const GridVector& v2);

/// Quasi-triangle constant s for the kind: 1 for metrics, 2^{q-1} for the
/// q-th power of a norm.
double quasi_triangle_constant(const Similarity& sim);

/// q-Wasserstein distance between two discrete probability measures on a
/// common uniform grid, evaluated exactly through the quantile representation
///   W_q(mu, nu) = ( int_0^1 |QF_mu(t) - QF_nu(t)|^q dt )^{1/q}
/// with piecewise-constant quantile functions.
double wasserstein_1d(const GridVector& mu1, const GridVector& mu2, double q);

}  // namespace tikhlab

#endif
