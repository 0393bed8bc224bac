#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tikhlab/analysis.hpp"
#include "tikhlab/problem.hpp"
#include "test_util.hpp"

using namespace tikhlab;
using namespace tikhlab::testutil;

namespace {

Problem scalar_identity_problem(double u_true, double p) {
  // F = id on R, Omega = u^2, S = | . |
  return make_problem(ForwardOperator::identity(1, 1.0), Penalty::squared_norm(),
                      Similarity::norm(), GridVector::function({u_true}, 1.0), p);
}

Problem diagonal_problem(std::vector<double> sigma, std::vector<double> u_true, double p,
                         double h = 1.0) {
  return make_problem(ForwardOperator::diagonal(std::move(sigma), h), Penalty::squared_norm(),
                      Similarity::norm(), GridVector::function(std::move(u_true), h), p);
}

}  // namespace

TEST_CASE("c_p matches the exponent split") {
  CHECK(c_p(2.0) == 2.0);
  CHECK(c_p(0.5) == 1.0);
  CHECK(c_p(1.0) == 1.0);
  CHECK(c_p(3.0) == 4.0);
  CHECK_THROWS_AS(c_p(0.0), std::domain_error);
  CHECK_THROWS_AS(c_p(-1.0), std::domain_error);
}

TEST_CASE("c_p inequality (a+b)^p <= c_p (a^p + b^p) on random pairs") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double p = rng.uniform(0.1, 4.0);
    const double a = rng.uniform(0.0, 10.0);
    const double b = rng.uniform(0.0, 10.0);
    const double lhs = std::pow(a + b, p);
    const double rhs = c_p(p) * (std::pow(a, p) + std::pow(b, p));
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("rho_default") {
  CHECK(rho_default(1.0, 2.0, 1.0, 1.1) == doctest::Approx(2.2).epsilon(1e-15));
  CHECK(rho_default(0.0, 1.0, 1.0, 2.0) == 2.0);
  CHECK(rho_default(1.0, 1.0, 2.0, 1.5) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS(rho_default(1.0, 2.0, 1.0, 1.0));  // margin must exceed 1
}

TEST_CASE("tikhonov_value on pinned instances") {
  Problem prob = scalar_identity_problem(1.0, 2.0);

  SUBCASE("at u_true with exact data the residual vanishes") {
    for (double alpha : {1e-3, 1.0, 7.5}) {
      CHECK(tikhonov_value(prob, prob.u_true, prob.v_exact, alpha) ==
            doctest::Approx(alpha * prob.omega_true()).epsilon(1e-14));
    }
  }
  SUBCASE("scalar F=id, u=0, v=1, alpha=1 gives 1") {
    CHECK(tikhonov_value(prob, GridVector::function({0.0}, 1.0),
                         GridVector::function({1.0}, 1.0), 1.0) == doctest::Approx(1.0));
  }
  SUBCASE("scalar, u=0.5 gives 0.5") {
    CHECK(tikhonov_value(prob, GridVector::function({0.5}, 1.0),
                         GridVector::function({1.0}, 1.0), 1.0) == doctest::Approx(0.5));
  }
}

TEST_CASE("level set membership") {
  Problem prob = scalar_identity_problem(1.0, 2.0);

  SUBCASE("u_true is always a member") {
    LevelSetSpec spec = make_level_set_spec(prob, 1.0);
    CHECK(level_set_member(prob, spec, prob.u_true));
  }
  SUBCASE("Omega(u) > rho alone rules membership out") {
    LevelSetSpec spec{1.0, 3.0};
    // Omega(u) = 16 > 3 = rho
    CHECK_FALSE(level_set_member(prob, spec, GridVector::function({4.0}, 1.0)));
  }
  SUBCASE("worked scalar instance: rho=3, u=0 is a member") {
    LevelSetSpec spec{1.0, 3.0};
    CHECK(level_set_member(prob, spec, GridVector::function({0.0}, 1.0)));
  }
}

TEST_CASE("level-set nesting in alpha") {
  Problem prob = diagonal_problem({1.0, 0.5, 0.25}, {0.4, -0.3, 0.2}, 2.0);
  Rng rng(99);
  const double rho = 2.0;
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const GridVector u = random_vector(rng, 3, 1.0, 1.2);
    double a1 = rng.uniform(0.01, 2.0);
    double a2 = rng.uniform(0.01, 2.0);
    if (a1 > a2) std::swap(a1, a2);
    // (i) fixed budget c: M_{a2}(c) subset of M_{a1}(c)
    const double c = rng.uniform(0.1, 3.0);
    if (tikhonov_value(prob, u, prob.v_exact, a2) <= c) {
      CHECK(tikhonov_value(prob, u, prob.v_exact, a1) <= c + 1e-12);
      ++checked;
    }
    // (ii) proportional budget: M_{a1}(rho a1) subset of M_{a2}(rho a2)
    if (tikhonov_value(prob, u, prob.v_exact, a1) <= rho * a1) {
      CHECK(tikhonov_value(prob, u, prob.v_exact, a2) <= rho * a2 + 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 50);  // the samples actually exercised both inclusions
}

TEST_CASE("level-set intersection characterization for alpha -> 0") {
  Problem prob = diagonal_problem({1.0, 0.5}, {0.5, 0.5}, 2.0);
  const double rho = 2.0;
  Rng rng(123);
  for (int i = 0; i < 200; ++i) {
    GridVector u = random_vector(rng, 2, 1.0, 1.0);
    bool in_all = true;
    for (double alpha = 1.0; alpha >= 1e-10; alpha *= 0.1) {
      if (tikhonov_value(prob, u, prob.v_exact, alpha) > rho * alpha) {
        in_all = false;
        break;
      }
    }
    if (in_all) {
      const double s = sim_value(prob.sim, apply(prob.op, u), prob.v_exact);
      CHECK(s <= std::pow(rho * 1e-10, 1.0 / prob.p) * (1.0 + 1e-9));
      CHECK(penalty_value(prob.pen, u) <= rho + 1e-9);
    }
  }
  // u_true itself lies in every proportional level set
  bool in_all = true;
  for (double alpha = 1.0; alpha >= 1e-10; alpha *= 0.1)
    in_all = in_all && tikhonov_value(prob, prob.u_true, prob.v_exact, alpha) <= rho * alpha;
  CHECK(in_all);
}

TEST_CASE("shipped subgradients satisfy the subgradient inequality") {
  Rng rng(2024);
  const std::size_t n = 6;
  const double h = 0.25;

  const auto check_triple = [&](const Penalty& pen, const GridVector& u_ref, auto gen) {
    const SubgradientElement xi = subgradient(pen, u_ref);
    const double base = penalty_value(pen, u_ref);
    for (int i = 0; i < 1000; ++i) {
      const GridVector u = gen();
      const double lhs = penalty_value(pen, u);
      const double rhs = base + apply(xi, axpy(u, -1.0, u_ref));
      CHECK(lhs >= rhs - 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  };

  check_triple(Penalty::squared_norm(), random_vector(rng, n, h),
               [&] { return random_vector(rng, n, h, 2.0); });
  check_triple(Penalty::power_norm(1.5), random_vector(rng, n, h),
               [&] { return random_vector(rng, n, h, 2.0); });
  check_triple(Penalty::negative_entropy(), random_positive_vector(rng, n, h),
               [&] { return random_positive_vector(rng, n, h, 0.0, 3.0); });
}

TEST_CASE("grid vector invariants") {
  CHECK_THROWS(GridVector::function({1.0, std::nan("")}, 1.0));
  CHECK_THROWS(GridVector::function({1.0}, 0.0));
  CHECK_THROWS(GridVector::measure({-0.5, 1.5}, 1.0));
  CHECK_THROWS(GridVector::measure({0.4, 0.4}, 1.0));  // mass 0.8
  const GridVector m = GridVector::measure({0.5, 0.5}, 1.0);
  CHECK(m.kind == GridVector::Kind::probability_measure);
}

TEST_CASE("problem construction validates the pieces") {
  // Wasserstein similarity demands measure-valued data.
  CHECK_THROWS(make_problem(ForwardOperator::identity(2, 0.5), Penalty::negative_entropy(),
                            Similarity::wasserstein(1.0),
                            GridVector::function({1.0, 1.0}, 0.5), 1.0));
  // Entropy subgradient needs strictly positive u_true.
  CHECK_THROWS(make_problem(ForwardOperator::identity(2, 0.5), Penalty::negative_entropy(),
                            Similarity::norm(), GridVector::function({0.0, 4.0}, 0.5), 1.0));
}
