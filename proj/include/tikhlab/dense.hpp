#ifndef TIKHLAB_DENSE_HPP
#define TIKHLAB_DENSE_HPP

#include <cstddef>
#include <vector>

#include "tikhlab/forward_operator.hpp"

namespace tikhlab {

/// Minimal dense row-major matrix for the desk-scale direct solves.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);
std::vector<double> matvec_transposed(const Matrix& m, const std::vector<double>& x);

/// m^T m
Matrix gram(const Matrix& m);
/// m m^T
Matrix gram_transposed(const Matrix& m);

/// In-place Cholesky solve of (spd + shift I) x = b.  Throws if the matrix is
/// not positive definite.
std::vector<double> cholesky_solve(Matrix spd, double shift, std::vector<double> b);

/// Plain matrix representation of u |-> F'(u0) u (columns are images of the
/// unit coordinate vectors, no h-weighting).
Matrix derivative_matrix(const ForwardOperator& op, const GridVector& u0);

}  // namespace tikhlab

#endif
