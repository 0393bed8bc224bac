#ifndef TIKHLAB_CORE_HPP
#define TIKHLAB_CORE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tikhlab {

/// Discretized element of the solution space U or the data space V.
/// All inner products and norms are h-weighted Euclidean,
///   <u, w> = h * sum_i u_i w_i,
/// so a vector represents a function (or density) sampled on a uniform grid
/// with spacing h.
struct GridVector {
  enum class Kind { function, probability_measure };

  std::vector<double> values;
  double h = 1.0;
  Kind kind = Kind::function;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  /// Support point of index i (measures live on the grid {0, h, 2h, ...}).
  double position(std::size_t i) const { return static_cast<double>(i) * h; }

  static GridVector function(std::vector<double> values, double h);
  /// Validates nonnegativity and unit h-weighted mass (1e-12 tolerance).
  static GridVector measure(std::vector<double> values, double h);
  static GridVector zeros(std::size_t n, double h);
};

/// Re-tag a vector as a probability measure, revalidating the constraints.
GridVector as_measure(const GridVector& v);

/// Element xi of a subdifferential, acting through the h-weighted pairing
///   xi(u) = h * sum_i c_i u_i.
struct SubgradientElement {
  std::vector<double> coefficients;
  double h = 1.0;

  std::size_t size() const { return coefficients.size(); }
};

double apply(const SubgradientElement& xi, const GridVector& u);

double dot(const GridVector& a, const GridVector& b);
double norm(const GridVector& a);
double norm(const SubgradientElement& a);

/// a + s*b
GridVector axpy(const GridVector& a, double s, const GridVector& b);
GridVector scale(const GridVector& a, double s);

bool all_finite(const std::vector<double>& v);
void require_same_grid(const GridVector& a, const GridVector& b, const char* where);

/// Constant c_p with (a+b)^p <= c_p (a^p + b^p): 1 for 0<p<1, 2^{p-1} for p>=1.
double c_p(double p);

// ---------------------------------------------------------------------------
// Deterministic pseudorandomness.
//
// Generator: xoshiro256** seeded through splitmix64.  Normal deviates use the
// Marsaglia polar method.  Fixed here (rather than <random> distributions) so
// noise vectors are reproducible for a given seed independent of the standard
// library.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal deviate.
  double normal();
  /// +1 or -1.
  double sign();

  std::vector<double> normal_vector(std::size_t n);

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Unit h-norm pseudorandom direction with Gaussian components.
GridVector random_unit_direction(std::size_t n, double h, std::uint64_t seed);

}  // namespace tikhlab

#endif
