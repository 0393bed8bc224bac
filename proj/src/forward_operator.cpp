#include "tikhlab/forward_operator.hpp"

#include <stdexcept>

namespace tikhlab {

ForwardOperator ForwardOperator::diagonal(std::vector<double> sigma, double h) {
  if (sigma.empty()) throw std::invalid_argument("diagonal: empty spectrum");
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (!(sigma[k] > 0.0)) throw std::invalid_argument("diagonal: sigma must be positive");
    if (k > 0 && sigma[k] > sigma[k - 1])
      throw std::invalid_argument("diagonal: sigma must be nonincreasing");
  }
  ForwardOperator op;
  op.kind = Kind::diagonal;
  op.n_u = op.n_v = sigma.size();
  op.sigma = std::move(sigma);
  op.h_u = op.h_v = h;
  return op;
}

ForwardOperator ForwardOperator::identity(std::size_t n, double h) {
  return diagonal(std::vector<double>(n, 1.0), h);
}

ForwardOperator ForwardOperator::integration(std::size_t n, double h) {
  ForwardOperator op;
  op.kind = Kind::integration;
  op.n_u = op.n_v = n;
  op.h_u = op.h_v = h;
  return op;
}

ForwardOperator ForwardOperator::autoconvolution(std::size_t n, double h) {
  ForwardOperator op;
  op.kind = Kind::autoconvolution;
  op.n_u = op.n_v = n;
  op.h_u = op.h_v = h;
  return op;
}

namespace {

void check_input(const ForwardOperator& op, const GridVector& u, const char* where) {
  if (u.size() != op.n_u) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  if (u.h != op.h_u) throw std::invalid_argument(std::string(where) + ": grid spacing mismatch");
}

bool is_identity(const ForwardOperator& op) {
  if (op.kind != ForwardOperator::Kind::diagonal) return false;
  for (double s : op.sigma)
    if (s != 1.0) return false;
  return true;
}

}  // namespace

GridVector apply(const ForwardOperator& op, const GridVector& u) {
  check_input(op, u, "apply");
  GridVector v = GridVector::zeros(op.n_v, op.h_v);
  switch (op.kind) {
    case ForwardOperator::Kind::diagonal:
      for (std::size_t k = 0; k < op.n_v; ++k) v.values[k] = op.sigma[k] * u.values[k];
      // The identity map carries measures to measures.
      if (u.kind == GridVector::Kind::probability_measure && is_identity(op))
        v.kind = GridVector::Kind::probability_measure;
      return v;
    case ForwardOperator::Kind::integration: {
      double acc = 0.0;
      for (std::size_t j = 0; j < op.n_v; ++j) {
        acc += u.values[j];
        v.values[j] = op.h_u * acc;
      }
      return v;
    }
    case ForwardOperator::Kind::autoconvolution:
      for (std::size_t k = 0; k < op.n_v; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) acc += u.values[i] * u.values[k - i];
        v.values[k] = op.h_u * acc;
      }
      return v;
  }
  throw std::logic_error("apply: unknown kind");
}

GridVector derivative_apply(const ForwardOperator& op, const GridVector& u0,
                            const GridVector& direction) {
  check_input(op, u0, "derivative_apply");
  check_input(op, direction, "derivative_apply");
  if (op.linear()) return apply(op, direction);
  GridVector v = GridVector::zeros(op.n_v, op.h_v);
  for (std::size_t k = 0; k < op.n_v; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= k; ++i) acc += u0.values[i] * direction.values[k - i];
    v.values[k] = 2.0 * op.h_u * acc;
  }
  return v;
}

GridVector adjoint_derivative_apply(const ForwardOperator& op, const GridVector& u0,
                                    const GridVector& w) {
  if (w.size() != op.n_v || w.h != op.h_v)
    throw std::invalid_argument("adjoint_derivative_apply: dimension mismatch");
  check_input(op, u0, "adjoint_derivative_apply");
  const double ratio = op.h_v / op.h_u;
  GridVector r = GridVector::zeros(op.n_u, op.h_u);
  switch (op.kind) {
    case ForwardOperator::Kind::diagonal:
      for (std::size_t k = 0; k < op.n_u; ++k)
        r.values[k] = ratio * op.sigma[k] * w.values[k];
      return r;
    case ForwardOperator::Kind::integration: {
      // Reversed cumulative sum scaled by h.
      double acc = 0.0;
      for (std::size_t i = op.n_u; i-- > 0;) {
        acc += w.values[i];
        r.values[i] = ratio * op.h_u * acc;
      }
      return r;
    }
    case ForwardOperator::Kind::autoconvolution:
      // Adjoint of d |-> 2h u0*d is the truncated correlation with u0.
      for (std::size_t j = 0; j < op.n_u; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i + j < op.n_v; ++i) acc += u0.values[i] * w.values[i + j];
        r.values[j] = ratio * 2.0 * op.h_u * acc;
      }
      return r;
  }
  throw std::logic_error("adjoint_derivative_apply: unknown kind");
}

}  // namespace tikhlab
