#include "tikhlab/penalty.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tikhlab {

Penalty Penalty::squared_norm() { return Penalty{Kind::squared_norm, 2.0}; }

Penalty Penalty::power_norm(double t) {
  if (!(t > 1.0 && t <= 2.0))
    throw std::invalid_argument("Penalty::power_norm: t must lie in (1, 2]");
  return Penalty{Kind::power_norm, t};
}

Penalty Penalty::negative_entropy() { return Penalty{Kind::negative_entropy, 2.0}; }

namespace {

double uniform_density(const GridVector& u) {
  return 1.0 / (static_cast<double>(u.size()) * u.h);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double penalty_value(const Penalty& pen, const GridVector& u) {
  switch (pen.kind) {
    case Penalty::Kind::squared_norm: {
      const double n = norm(u);
      return n * n;
    }
    case Penalty::Kind::power_norm: {
      double s = 0.0;
      for (double x : u.values) s += std::pow(std::abs(x), pen.t);
      return u.h * s;
    }
    case Penalty::Kind::negative_entropy: {
      const double ubar = uniform_density(u);
      double s = 0.0;
      for (double x : u.values) {
        if (x < 0.0) return std::numeric_limits<double>::infinity();
        s += xlogx(x) - x * std::log(ubar) - x + ubar;
      }
      return u.h * s;
    }
  }
  throw std::logic_error("penalty_value: unknown kind");
}

SubgradientElement subgradient(const Penalty& pen, const GridVector& u) {
  SubgradientElement xi;
  xi.h = u.h;
  xi.coefficients.resize(u.size());
  switch (pen.kind) {
    case Penalty::Kind::squared_norm:
      for (std::size_t i = 0; i < u.size(); ++i) xi.coefficients[i] = 2.0 * u.values[i];
      return xi;
    case Penalty::Kind::power_norm:
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u.values[i];
        xi.coefficients[i] =
            x == 0.0 ? 0.0 : pen.t * std::pow(std::abs(x), pen.t - 1.0) * (x > 0.0 ? 1.0 : -1.0);
      }
      return xi;
    case Penalty::Kind::negative_entropy: {
      const double ubar = uniform_density(u);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u.values[i];
        if (!(x > 0.0))
          throw std::domain_error("subgradient: entropy requires strictly positive entries");
        xi.coefficients[i] = std::log(x / ubar);
      }
      return xi;
    }
  }
  throw std::logic_error("subgradient: unknown kind");
}

double bregman(const Penalty& pen, const GridVector& u, const GridVector& u_ref,
               const SubgradientElement& xi) {
  require_same_grid(u, u_ref, "bregman");
  if (pen.kind == Penalty::Kind::squared_norm) {
    // Exact identity for the squared norm; avoids cancellation.
    const double d = norm(axpy(u, -1.0, u_ref));
    return d * d;
  }
  return penalty_value(pen, u) - penalty_value(pen, u_ref) - apply(xi, axpy(u, -1.0, u_ref));
}

}  // namespace tikhlab
