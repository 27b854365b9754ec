#include <cmath>

#include "doctest.h"
#include "mpcc/baseline.hpp"
#include "mpcc/generators.hpp"
#include "mpcc/rng.hpp"

using namespace mpcc;

TEST_SUITE("baseline") {

TEST_CASE("product projection") {
  const QuadraticMpcc q = gen_bound_qpcc({2, 1, 42});
  // feasible points are fixed
  std::vector<double> x{q.l0[0], q.u0[1], 1.5, 0.0};
  CHECK(project_box_times_comp(x, q) == x);

  // pair branch with the deterministic tie handling
  x = {q.l0[0], q.l0[1], 3.0, 2.0};
  auto px = project_box_times_comp(x, q);
  CHECK(px[2] == 3.0);
  CHECK(px[3] == 0.0);

  // box clamp on the x0 block
  x = {q.u0[0] + 5.0, q.l0[1] - 2.0, 0.0, 1.0};
  px = project_box_times_comp(x, q);
  CHECK(px[0] == q.u0[0]);
  CHECK(px[1] == q.l0[1]);

  QuadraticMpcc bad = q;
  bad.linear_ineq = QuadraticMpcc::LinearIneq{{{1.0, 0.0}}, {0.0}};
  CHECK_THROWS_AS(project_box_times_comp(x, bad), SchemaError);
}

TEST_CASE("reference instance lands on a stationary branch point") {
  const QuadraticMpcc q = kth3_quadratic();
  PgmOptions opts;
  opts.epsilon = 1e-10;
  const InnerResult res = pgm_solve(q, {1.0, 1.0}, opts);
  CHECK(res.status == InnerStatus::Converged);
  CHECK(res.residual <= 1e-10);
  const bool at_global =
      std::abs(res.x[0]) <= 1e-9 && std::abs(res.x[1] - 1.0) <= 1e-9;
  const bool at_local =
      std::abs(res.x[0] - 1.0) <= 1e-9 && std::abs(res.x[1]) <= 1e-9;
  CHECK((at_global || at_local));
  // record the basin: the tie projection of (1,1) keeps the first
  // coordinate, so the run settles at the local point (1, 0)
  CHECK(at_local);
}

TEST_CASE("feasible stationary start terminates immediately") {
  const QuadraticMpcc q = kth3_quadratic();
  PgmOptions opts;
  // (1, 0) is a fixed point of the projected map at full step
  const InnerResult res = pgm_solve(q, {1.0, 0.0}, opts);
  CHECK(res.status == InnerStatus::Converged);
  CHECK(res.iters <= 1);
  CHECK(res.x == std::vector<double>{1.0, 0.0});
}

TEST_CASE("iterates stay exactly feasible and descend") {
  const QuadraticMpcc q = gen_bound_qpcc({10, 20, 0});
  const MpccProblem prob = quadratic_to_mpcc(q);
  Rng rng(2024);
  std::vector<double> x0(q.dim());
  for (double& t : x0) t = rng.uniform(-50.0, 50.0);

  long iterates = 0;
  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true, feasible = true;
  auto observer = [&](std::span<const double> x) {
    ++iterates;
    feasible = feasible && cc_violation(prob, x, Norm::Two) == 0.0;
    feasible = feasible && prob.box.contains(x);
    const double f = q.objective_value(x);
    monotone = monotone && f <= previous + 1e-12 * std::max(1.0, std::abs(previous));
    previous = f;
  };

  PgmOptions opts;
  opts.epsilon = 1e-8;
  const InnerResult res = pgm_solve(q, x0, opts, observer);
  CHECK(res.status == InnerStatus::Converged);
  CHECK(iterates == res.iters + 1);  // observer sees the projected start too
  CHECK(feasible);
  CHECK(monotone);
  CHECK(res.value <= q.objective_value(project_box_times_comp(x0, q)));
}

TEST_CASE("determinism") {
  const QuadraticMpcc q = gen_bound_qpcc({5, 5, 9});
  Rng rng(1);
  std::vector<double> x0(q.dim());
  for (double& t : x0) t = rng.uniform(-50.0, 50.0);
  PgmOptions opts;
  const InnerResult a = pgm_solve(q, x0, opts);
  const InnerResult b = pgm_solve(q, x0, opts);
  CHECK(a.x == b.x);
  CHECK(a.iters == b.iters);
}

}  // TEST_SUITE
