#include <cmath>

#include "doctest.h"
#include "mpcc/generators.hpp"
#include "mpcc/model.hpp"
#include "mpcc/rng.hpp"
#include "oracles.hpp"

using namespace mpcc;

namespace {

ScalarConstraint affine(std::vector<double> coeffs, double offset) {
  ScalarConstraint c;
  c.value = [coeffs, offset](std::span<const double> x) {
    double acc = offset;
    for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * x[j];
    return acc;
  };
  c.gradient = [coeffs](std::span<const double>) { return coeffs; };
  return c;
}

ValueCallback zero_value() {
  return [](std::span<const double>) { return 0.0; };
}

GradCallback zero_grad(std::size_t n) {
  return [n](std::span<const double>) { return std::vector<double>(n, 0.0); };
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("equality reformulation gives two well-behaved pairs") {
  // c(x) = x1 - 1
  auto prob = from_general(zero_value(), zero_grad(2),
                           {affine({1.0, 0.0}, -1.0)}, {}, {},
                           BoxSet::unbounded(2));
  REQUIRE(prob.ccs.size() == 2);
  for (const auto& cc : prob.ccs) {
    CHECK(cc.well_behaved);
    CHECK(cc.constant_h);
    CHECK_FALSE(cc.constant_g);
  }
  const std::vector<double> x{3.0, 7.0};
  CHECK(prob.ccs[0].eval(x) == Point2{2.0, 0.0});
  CHECK(prob.ccs[1].eval(x) == Point2{-2.0, 0.0});
  const CcJacobian jac = prob.ccs[1].jacobian(x);
  CHECK(jac.grad_g == std::vector<double>{-1.0, 0.0});
  CHECK(jac.grad_h == std::vector<double>{0.0, 0.0});
}

TEST_CASE("no general constraints leaves the problem unchanged") {
  CcPair user;
  user.eval = [](std::span<const double> x) { return Point2{x[0], x[1]}; };
  user.jacobian = [](std::span<const double>) {
    return CcJacobian{{1.0, 0.0}, {0.0, 1.0}};
  };
  user.well_behaved = false;
  auto prob = from_general(zero_value(), zero_grad(2), {}, {},
                           {std::move(user)}, BoxSet::unbounded(2));
  REQUIRE(prob.ccs.size() == 1);
  CHECK_FALSE(prob.ccs[0].well_behaved);
}

TEST_CASE("inequality reformulation feasibility matches the sign") {
  // c(x) = x2 - 3 <= 0
  auto prob = from_general(zero_value(), zero_grad(2), {},
                           {affine({0.0, 1.0}, -3.0)}, {},
                           BoxSet::unbounded(2));
  REQUIRE(prob.ccs.size() == 1);
  CHECK(prob.ccs[0].eval(std::vector<double>{0.0, 1.0}) == Point2{2.0, 0.0});
  CHECK(cc_violation(prob, std::vector<double>{0.0, 1.0}, Norm::Two) == 0.0);
  CHECK(cc_violation(prob, std::vector<double>{0.0, 5.0}, Norm::Two) ==
        doctest::Approx(2.0));
}

TEST_CASE("reformulation equivalence on random affine constraints") {
  Rng rng(11);
  const double tol = 1e-9;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3;
    std::vector<double> ce{rng.normal(), rng.normal(), rng.normal()};
    std::vector<double> ci{rng.normal(), rng.normal(), rng.normal()};
    const double be = rng.normal(), bi = rng.normal();
    auto prob = from_general(zero_value(), zero_grad(n),
                             {affine(ce, be)}, {affine(ci, bi)}, {},
                             BoxSet::unbounded(n));
    std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-2.0, 2.0)};
    double eq = be, in = bi;
    for (std::size_t j = 0; j < n; ++j) {
      eq += ce[j] * x[j];
      in += ci[j] * x[j];
    }
    const bool original_ok = std::abs(eq) <= tol && in <= tol;
    const double v = cc_violation(prob, x, Norm::Two);
    const bool reformulated_ok = v <= tol * std::sqrt(3.0);
    CHECK(original_ok == reformulated_ok);
  }
}

TEST_CASE("violation norms") {
  auto prob = from_general(zero_value(), zero_grad(2), {}, {}, {},
                           BoxSet::unbounded(2));
  CcPair a;
  a.eval = [](std::span<const double>) { return Point2{1.0, 0.0}; };
  a.jacobian = [](std::span<const double>) {
    return CcJacobian{{0.0, 0.0}, {0.0, 0.0}};
  };
  CcPair b = a;
  b.eval = [](std::span<const double>) { return Point2{0.2, 0.3}; };
  prob.ccs = {a, b};
  const std::vector<double> x{0.0, 0.0};
  CHECK(cc_violation(prob, x, Norm::Two) == doctest::Approx(0.2));
  CHECK(cc_violation(prob, x, Norm::Inf) == doctest::Approx(0.2));

  CcPair c = a;
  c.eval = [](std::span<const double>) { return Point2{-1.0, -2.0}; };
  prob.ccs = {c};
  CHECK(cc_violation(prob, x, Norm::Two) == doctest::Approx(2.0));
}

TEST_CASE("envelope residual sums the pair envelopes") {
  auto prob = from_general(zero_value(), zero_grad(1), {}, {}, {},
                           BoxSet::unbounded(1));
  CcPair cc;
  cc.eval = [](std::span<const double>) { return Point2{-1.0, -2.0}; };
  cc.jacobian = [](std::span<const double>) {
    return CcJacobian{{0.0}, {0.0}};
  };
  prob.ccs = {cc};
  const std::vector<double> x{0.0};
  CHECK(envelope_residual(prob, x, 0.5) == doctest::Approx(5.0));
  prob.ccs = {cc, cc};
  CHECK(envelope_residual(prob, x, 0.5) == doctest::Approx(10.0));

  const MpccProblem feasible = kth3();
  CHECK(envelope_residual(feasible, std::vector<double>{0.0, 1.0}, 0.9) == 0.0);
}

TEST_CASE("stopping criterion implies the violation bound") {
  Rng rng(1234);
  long premise_hits = 0;
  for (int s = 0; s < 100000; ++s) {
    const double beta = rng.uniform(0.01, 0.99);
    const double eps = std::pow(10.0, rng.uniform(-6.0, 0.0));
    const std::size_t p = 1 + s % 4;
    double sum_r = 0.0, sum_min_sq = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      // feasible pair nudged by noise on the scale of eps
      Point2 f = rng.uniform01() < 0.5 ? Point2{rng.uniform(0.0, 2.0), 0.0}
                                       : Point2{0.0, rng.uniform(0.0, 2.0)};
      f.z1 += eps * rng.uniform(-1.0, 1.0);
      f.z2 += eps * rng.uniform(-1.0, 1.0);
      sum_r += r_beta(f, beta);
      const double m = std::min(f.z1, f.z2);
      sum_min_sq += m * m;
    }
    if (sum_r <= eps * eps / 2.0) {
      ++premise_hits;
      CHECK(std::sqrt(sum_min_sq) <= eps);
    }
  }
  CHECK(premise_hits > 1000);  // the premise must not be vacuous
}

TEST_CASE("quadratic instance wiring") {
  const QuadraticMpcc q = kth3_quadratic();
  const MpccProblem prob = quadratic_to_mpcc(q);
  REQUIRE(prob.dim == 2);
  REQUIRE(prob.ccs.size() == 1);
  CHECK_FALSE(prob.ccs[0].well_behaved);

  // quadratic form drops the expanded constant: offset -1.5 from the
  // reference objective
  const std::vector<double> ones{1.0, 1.0};
  CHECK(prob.objective(ones) == doctest::Approx(-1.5));
  CHECK(kth3().objective(ones) == doctest::Approx(0.0));
  const std::vector<double> sol{0.0, 1.0};
  CHECK(prob.objective(sol) == doctest::Approx(-1.0));
  CHECK(kth3().objective(sol) == doctest::Approx(0.5));

  CHECK(cc_violation(prob, std::vector<double>{0.5, 0.5}, Norm::Two) ==
        doctest::Approx(0.5));
}

TEST_CASE("empty complementarity list gives a smooth box QP") {
  QuadraticMpcc q;
  q.n0 = 2;
  q.q_matrix.n = 2;
  q.q_matrix.add(0, 0, 2.0);
  q.l0 = {-1.0, -1.0};
  q.u0 = {1.0, 1.0};
  q.g = {0.5, -0.5};
  const MpccProblem prob = quadratic_to_mpcc(q);
  CHECK(prob.ccs.empty());
  CHECK(prob.box.lower == std::vector<double>{-1.0, -1.0});
  CHECK(cc_violation(prob, std::vector<double>{0.3, 0.4}, Norm::Two) == 0.0);
}

TEST_CASE("zero data gives the zero objective") {
  QuadraticMpcc q;
  q.n0 = 1;
  q.q_matrix.n = 3;
  q.g = {0.0, 0.0, 0.0};
  q.cc_pairs.emplace_back(1, 2);
  const MpccProblem prob = quadratic_to_mpcc(q);
  const std::vector<double> x{0.7, -0.3, 2.0};
  CHECK(prob.objective(x) == 0.0);
  CHECK(prob.gradient(x) == std::vector<double>(3, 0.0));
}

TEST_CASE("quadratic gradient matches central differences") {
  const QuadraticMpcc q = gen_bound_qpcc({3, 2, 17});
  const MpccProblem prob = quadratic_to_mpcc(q);
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(prob.dim);
    for (double& t : x) t = rng.uniform(-3.0, 3.0);
    const auto fd = oracle::finite_diff_grad(prob.objective, x, 1e-6);
    const auto g = prob.gradient(x);
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(std::abs(fd[j] - g[j]) <= 1e-6 * std::max(1.0, std::abs(g[j])));
  }
}

TEST_CASE("linear blocks of the general form") {
  // minimize 0 with A x0 + a <= 0 and 0 <= x1 perp N x0 + M x1 + q >= 0
  QuadraticMpcc q;
  q.n0 = 2;
  q.g = {0.0, 0.0, 0.0};
  q.q_matrix.n = 3;
  q.linear_ineq = QuadraticMpcc::LinearIneq{{{1.0, 1.0}}, {-4.0}};
  q.linear_cc = QuadraticMpcc::LinearCc{{{1.0, 0.0}}, {{2.0}}, {-1.0}};
  q.validate();
  CHECK(q.dim() == 3);
  CHECK(q.cc_count() == 1);  // the inequality is not a complementarity

  const MpccProblem prob = quadratic_to_mpcc(q);
  REQUIRE(prob.ccs.size() == 2);
  // inequality reformulation first, flagged well behaved
  CHECK(prob.ccs[0].well_behaved);
  CHECK_FALSE(prob.ccs[1].well_behaved);

  const std::vector<double> x{1.0, 2.0, 0.5};
  CHECK(prob.ccs[0].eval(x) == Point2{1.0, 0.0});  // 4 - (x0_1 + x0_2)
  CHECK(prob.ccs[1].eval(x) == Point2{0.5, 1.0});  // (x1, x0_1 + 2 x1 - 1)
  const CcJacobian jac = prob.ccs[1].jacobian(x);
  CHECK(jac.grad_g == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(jac.grad_h == std::vector<double>{1.0, 0.0, 2.0});
}

TEST_CASE("schema validation rejects inconsistent data") {
  QuadraticMpcc q;
  q.n0 = 1;
  q.q_matrix.n = 3;
  q.g = {0.0, 0.0, 0.0};
  q.cc_pairs.emplace_back(1, 1);  // not disjoint
  CHECK_THROWS_AS(q.validate(), SchemaError);
  q.cc_pairs = {{1, 2}};
  q.validate();
  q.g.pop_back();
  CHECK_THROWS_AS(q.validate(), SchemaError);
}

}  // TEST_SUITE
