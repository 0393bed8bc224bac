#include "tikhlab/core.hpp"

#include <cmath>
#include <stdexcept>

namespace tikhlab {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

GridVector GridVector::function(std::vector<double> values, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("GridVector: grid spacing must be positive");
  if (!all_finite(values)) throw std::invalid_argument("GridVector: non-finite entry");
  GridVector g;
  g.values = std::move(values);
  g.h = h;
  g.kind = Kind::function;
  return g;
}

GridVector GridVector::measure(std::vector<double> values, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("GridVector: grid spacing must be positive");
  if (!all_finite(values)) throw std::invalid_argument("GridVector: non-finite entry");
  double mass = 0.0;
  for (double x : values) {
    if (x < 0.0) throw std::domain_error("GridVector: measure with negative entry");
    mass += x;
  }
  mass *= h;
  if (std::abs(mass - 1.0) > 1e-12)
    throw std::domain_error("GridVector: measure mass " + std::to_string(mass) + " != 1");
  GridVector g;
  g.values = std::move(values);
  g.h = h;
  g.kind = Kind::probability_measure;
  return g;
}

GridVector GridVector::zeros(std::size_t n, double h) {
  return GridVector::function(std::vector<double>(n, 0.0), h);
}

GridVector as_measure(const GridVector& v) {
  return GridVector::measure(v.values, v.h);
}

void require_same_grid(const GridVector& a, const GridVector& b, const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  if (a.h != b.h)
    throw std::invalid_argument(std::string(where) + ": grid spacing mismatch");
}

double apply(const SubgradientElement& xi, const GridVector& u) {
  if (xi.size() != u.size())
    throw std::invalid_argument("SubgradientElement: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += xi.coefficients[i] * u.values[i];
  return xi.h * s;
}

double dot(const GridVector& a, const GridVector& b) {
  require_same_grid(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.values[i] * b.values[i];
  return a.h * s;
}

double norm(const GridVector& a) {
  double s = 0.0;
  for (double x : a.values) s += x * x;
  return std::sqrt(a.h * s);
}

double norm(const SubgradientElement& a) {
  double s = 0.0;
  for (double x : a.coefficients) s += x * x;
  return std::sqrt(a.h * s);
}

GridVector axpy(const GridVector& a, double s, const GridVector& b) {
  require_same_grid(a, b, "axpy");
  GridVector r = a;
  r.kind = GridVector::Kind::function;
  for (std::size_t i = 0; i < r.size(); ++i) r.values[i] += s * b.values[i];
  return r;
}

GridVector scale(const GridVector& a, double s) {
  GridVector r = a;
  r.kind = GridVector::Kind::function;
  for (double& x : r.values) x *= s;
  return r;
}

double c_p(double p) {
  if (!(p > 0.0)) throw std::domain_error("c_p: exponent must be positive");
  return p < 1.0 ? 1.0 : std::pow(2.0, p - 1.0);
}

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, q;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    q = u * u + v * v;
  } while (q >= 1.0 || q == 0.0);
  const double f = std::sqrt(-2.0 * std::log(q) / q);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

double Rng::sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

std::vector<double> Rng::normal_vector(std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = normal();
  return v;
}

GridVector random_unit_direction(std::size_t n, double h, std::uint64_t seed) {
  Rng rng(seed);
  GridVector d = GridVector::function(rng.normal_vector(n), h);
  double nd = norm(d);
  while (nd == 0.0) {  // astronomically unlikely, but keep the contract
    d.values = rng.normal_vector(n);
    nd = norm(d);
  }
  return scale(d, 1.0 / nd);
}

}  // namespace tikhlab
