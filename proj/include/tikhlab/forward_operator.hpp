#ifndef TIKHLAB_FORWARD_OPERATOR_HPP
#define TIKHLAB_FORWARD_OPERATOR_HPP

#include "tikhlab/core.hpp"

namespace tikhlab {

/// Forward operator F : U -> V on uniform grids.
///
///  diagonal          (F u)_k = sigma_k u_k, sigma positive and nonincreasing
///  integration       (F u)_j = h * sum_{i <= j} u_i   (cumulative quadrature)
///  autoconvolution   (F u)_k = h * sum_{i <= k} u_i u_{k-i}
///
/// The linear kinds are their own derivative; the autoconvolution has
/// F'(u0) d = 2 h (u0 * d) with the same grid truncation.  Adjoints are taken
/// with respect to the h-weighted inner products on U and V.
struct ForwardOperator {
  enum class Kind { diagonal, integration, autoconvolution };

  Kind kind = Kind::diagonal;
  std::vector<double> sigma;  // diagonal only
  std::size_t n_u = 0;
  std::size_t n_v = 0;
  double h_u = 1.0;
  double h_v = 1.0;

  bool linear() const { return kind != Kind::autoconvolution; }

  static ForwardOperator diagonal(std::vector<double> sigma, double h);
  static ForwardOperator identity(std::size_t n, double h);
  static ForwardOperator integration(std::size_t n, double h);
  static ForwardOperator autoconvolution(std::size_t n, double h);
};

GridVector apply(const ForwardOperator& op, const GridVector& u);
GridVector derivative_apply(const ForwardOperator& op, const GridVector& u0,
                            const GridVector& direction);
/// w |-> F'(u0)^* w, satisfying <F'(u0) d, w>_V = <d, F'(u0)^* w>_U.
GridVector adjoint_derivative_apply(const ForwardOperator& op, const GridVector& u0,
                                    const GridVector& w);

}  // namespace tikhlab

#endif
