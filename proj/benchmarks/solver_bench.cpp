#include <benchmark/benchmark.h>

#include "mpcc/baseline.hpp"
#include "mpcc/generators.hpp"
#include "mpcc/homotopy.hpp"

namespace {

void BM_homotopy_bound_qpcc(benchmark::State& state) {
  const auto n0 = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const mpcc::QuadraticMpcc q = mpcc::gen_bound_qpcc({n0, p, 0});
  const mpcc::MpccProblem prob = mpcc::quadratic_to_mpcc(q);
  std::vector<double> x0(prob.dim, 0.0);
  for (std::size_t j = 0; j < q.n0; ++j) x0[j] = q.l0[j];
  mpcc::HomotopyParams params;
  params.epsilon = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpcc::solve(prob, params, x0));
  }
}
BENCHMARK(BM_homotopy_bound_qpcc)
    ->Args({5, 10})
    ->Args({10, 20})
    ->Args({20, 40})
    ->Unit(benchmark::kMillisecond);

void BM_pgm_bound_qpcc(benchmark::State& state) {
  const auto n0 = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const mpcc::QuadraticMpcc q = mpcc::gen_bound_qpcc({n0, p, 0});
  std::vector<double> x0(q.dim(), 0.0);
  for (std::size_t j = 0; j < q.n0; ++j) x0[j] = q.l0[j];
  mpcc::PgmOptions opts;
  opts.epsilon = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpcc::pgm_solve(q, x0, opts));
  }
}
BENCHMARK(BM_pgm_bound_qpcc)
    ->Args({10, 20})
    ->Args({20, 40})
    ->Unit(benchmark::kMillisecond);

void BM_smoothed_gradient(benchmark::State& state) {
  const auto n0 = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const mpcc::QuadraticMpcc q = mpcc::gen_bound_qpcc({n0, p, 0});
  const mpcc::MpccProblem prob = mpcc::quadratic_to_mpcc(q);
  const mpcc::SmoothedProblem sp(prob, {0.1, 0.999});
  std::vector<double> x(prob.dim, 0.5);
  for (auto _ : state) {
    x[0] = -x[0];  // defeat the evaluation cache
    benchmark::DoNotOptimize(sp.gradient(x));
  }
}
BENCHMARK(BM_smoothed_gradient)
    ->Args({20, 40})
    ->Args({100, 200})
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
