#ifndef TIKHLAB_NONLINEARITY_HPP
#define TIKHLAB_NONLINEARITY_HPP

#include <vector>

#include "tikhlab/problem.hpp"

namespace tikhlab {

/// Certified fit of the Taylor-remainder bound
///   ||F(u) - F(u_true) - F'(u_true)(u - u_true)||
///     <= K ||F(u) - F(u_true)||^{c1} B_xi(u, u_true)^{c2}
/// over level-set samples: least squares in log space for (c1, c2, K), then K
/// inflated so the inequality holds on every sample used for the fit.
struct NonlinearityDegreeFit {
  double c1 = 1.0;
  double c2 = 0.0;
  double K = 0.0;
  double residual = 0.0;  // rms log-space misfit of the regression
};

/// Samples must lie in the level set and provide at least 10 points with
/// distinct nonzero remainders; a linear operator short-circuits to the
/// conventional (c1, c2, K) = (1, 0, 0).
NonlinearityDegreeFit fit_nonlinearity_degree(const Problem& problem, const LevelSetSpec& spec,
                                              const std::vector<GridVector>& sample_points);

/// Remainder F(u) - F(u_true) - F'(u_true)(u - u_true).
GridVector taylor_remainder(const Problem& problem, const GridVector& u);

}  // namespace tikhlab

#endif
