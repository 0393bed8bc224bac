#ifndef TIKHLAB_TESTS_ASC_ORACLE_HPP
#define TIKHLAB_TESTS_ASC_ORACLE_HPP

// Brute-force lambda-grid oracle for the approximate-source-condition
// distance on diagonal operators: recursive grid refinement of the secular
// equation ||eta_lambda|| = r, independent of the bisection used by the
// implementation.

#include <cmath>
#include <vector>

#include "tikhlab/problem.hpp"

namespace tikhlab::testutil {

inline double asc_grid_oracle(const Problem& prob, double r) {
  const auto& sigma = prob.op.sigma;
  const auto& xi = prob.xi.coefficients;
  const double h = prob.op.h_v;

  const auto eta_norm = [&](double lambda) {
    double s = 0.0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const double e = sigma[k] * xi[k] / (sigma[k] * sigma[k] + lambda);
      s += e * e;
    }
    return std::sqrt(h * s);
  };
  const auto value = [&](double lambda) {
    double s = 0.0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const double resid = lambda * xi[k] / (sigma[k] * sigma[k] + lambda);
      s += resid * resid;
    }
    return std::sqrt(h * s);
  };

  if (r == 0.0) return norm(prob.xi);
  if (eta_norm(0.0) <= r) return value(0.0);

  // coarse bracket in log lambda, then recursive 10-point refinements
  double lo = 1e-14, hi = 1e14;
  {
    double prev = lo;
    bool found = false;
    for (int i = 1; i <= 600; ++i) {
      const double lam = lo * std::pow(hi / lo, static_cast<double>(i) / 600.0);
      if (eta_norm(lam) <= r) {
        hi = lam;
        lo = prev;
        found = true;
        break;
      }
      prev = lam;
    }
    if (!found) return value(hi);
  }
  for (int level = 0; level < 18; ++level) {
    double new_lo = lo, new_hi = hi;
    for (int i = 1; i <= 10; ++i) {
      const double lam = lo + (hi - lo) * static_cast<double>(i) / 10.0;
      if (eta_norm(lam) <= r) {
        new_hi = lam;
        new_lo = lo + (hi - lo) * static_cast<double>(i - 1) / 10.0;
        break;
      }
    }
    lo = new_lo;
    hi = new_hi;
  }
  return value(0.5 * (lo + hi));
}

}  // namespace tikhlab::testutil

#endif
