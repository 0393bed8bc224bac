#include "tikhlab/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace tikhlab {

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
  if (x.size() != m.cols) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> matvec_transposed(const Matrix& m, const std::vector<double>& x) {
  if (x.size() != m.rows) throw std::invalid_argument("matvec_transposed: dimension mismatch");
  std::vector<double> y(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) y[j] += m(i, j) * x[i];
  return y;
}

Matrix gram(const Matrix& m) {
  Matrix g(m.cols, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      for (std::size_t k = j; k < m.cols; ++k) g(j, k) += m(i, j) * m(i, k);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t k = 0; k < j; ++k) g(j, k) = g(k, j);
  return g;
}

Matrix gram_transposed(const Matrix& m) {
  Matrix g(m.rows, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t k = i; k < m.rows; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * m(k, j);
      g(i, k) = acc;
      g(k, i) = acc;
    }
  return g;
}

std::vector<double> cholesky_solve(Matrix spd, double shift, std::vector<double> b) {
  const std::size_t n = spd.rows;
  if (spd.cols != n || b.size() != n)
    throw std::invalid_argument("cholesky_solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) spd(i, i) += shift;

  // Lower Cholesky factor in place.
  for (std::size_t j = 0; j < n; ++j) {
    double d = spd(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= spd(j, k) * spd(j, k);
    if (!(d > 0.0)) throw std::runtime_error("cholesky_solve: matrix not positive definite");
    const double l = std::sqrt(d);
    spd(j, j) = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= spd(i, k) * spd(j, k);
      spd(i, j) = s / l;
    }
  }
  // Forward then backward substitution.
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= spd(i, k) * b[k];
    b[i] = s / spd(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= spd(k, i) * b[k];
    b[i] = s / spd(i, i);
  }
  return b;
}

Matrix derivative_matrix(const ForwardOperator& op, const GridVector& u0) {
  Matrix m(op.n_v, op.n_u);
  GridVector e = GridVector::zeros(op.n_u, op.h_u);
  for (std::size_t j = 0; j < op.n_u; ++j) {
    e.values[j] = 1.0;
    GridVector col = derivative_apply(op, u0, e);
    for (std::size_t i = 0; i < op.n_v; ++i) m(i, j) = col.values[i];
    e.values[j] = 0.0;
  }
  return m;
}

}  // namespace tikhlab
