#include "tikhlab/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace tikhlab {

Similarity Similarity::norm() { return Similarity{Kind::norm, 1.0}; }

Similarity Similarity::norm_power(double q) {
  if (!(q >= 1.0 && q <= 4.0))
    throw std::invalid_argument("Similarity::norm_power: q must lie in [1, 4]");
  return Similarity{Kind::norm_power, q};
}

Similarity Similarity::wasserstein(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("Similarity::wasserstein: q must be >= 1");
  return Similarity{Kind::wasserstein_1d, q};
}

double sim_value(const Similarity& sim, const GridVector& v1, const GridVector& v2) {
  require_same_grid(v1, v2, "sim_value");
  switch (sim.kind) {
    case Similarity::Kind::norm:
      return norm(axpy(v1, -1.0, v2));
    case Similarity::Kind::norm_power:
      return std::pow(norm(axpy(v1, -1.0, v2)), sim.q);
    case Similarity::Kind::wasserstein_1d:
      return wasserstein_1d(v1, v2, sim.q);
  }
  throw std::logic_error("sim_value: unknown kind");
}

double quasi_triangle_constant(const Similarity& sim) {
  switch (sim.kind) {
    case Similarity::Kind::norm:
      return 1.0;
    case Similarity::Kind::norm_power:
      return std::pow(2.0, sim.q - 1.0);
    case Similarity::Kind::wasserstein_1d:
      return 1.0;
  }
  throw std::logic_error("quasi_triangle_constant: unknown kind");
}

double wasserstein_1d(const GridVector& mu1, const GridVector& mu2, double q) {
  if (mu1.kind != GridVector::Kind::probability_measure ||
      mu2.kind != GridVector::Kind::probability_measure)
    throw std::domain_error("wasserstein_1d: both arguments must be probability measures");
  require_same_grid(mu1, mu2, "wasserstein_1d");
  if (!(q >= 1.0)) throw std::invalid_argument("wasserstein_1d: q must be >= 1");

  const std::size_t n = mu1.size();
  const double h = mu1.h;

  // Walk the merged jump points of the two CDFs; between consecutive jump
  // points both quantile functions are constant.
  std::size_t i = 0, j = 0;
  double ca = 0.0, cb = 0.0;  // cumulative masses up to (excluding) i, j
  double t = 0.0;
  double acc = 0.0;
  while (i < n && j < n) {
    while (i < n && mu1.values[i] == 0.0) ++i;
    while (j < n && mu2.values[j] == 0.0) ++j;
    if (i >= n || j >= n) break;
    const double na = ca + h * mu1.values[i];
    const double nb = cb + h * mu2.values[j];
    const double t_next = std::min(std::min(na, nb), 1.0);
    if (t_next > t) {
      acc += (t_next - t) * std::pow(std::abs(mu1.position(i) - mu2.position(j)), q);
      t = t_next;
    }
    if (na <= t_next + 1e-15) {
      ca = na;
      ++i;
    }
    if (nb <= t_next + 1e-15) {
      cb = nb;
      ++j;
    }
    if (t >= 1.0) break;
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace tikhlab
