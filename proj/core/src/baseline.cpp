#include "mpcc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpcc {

namespace {

constexpr int kMaxBacktracks = 60;

void require_bound_form(const QuadraticMpcc& q) {
  if (q.linear_ineq || q.linear_cc)
    throw SchemaError("projection requires the bound-constrained form");
  for (const auto& [j, k] : q.cc_pairs)
    if (j < q.n0 || k < q.n0)
      throw SchemaError("paired variable carries box bounds");
}

}  // namespace

std::vector<double> project_box_times_comp(std::span<const double> x,
                                           const QuadraticMpcc& q) {
  require_bound_form(q);
  if (x.size() != q.dim()) throw SchemaError("projection: dimension mismatch");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t j = 0; j < q.n0; ++j) {
    if (!q.l0.empty()) out[j] = std::max(out[j], q.l0[j]);
    if (!q.u0.empty()) out[j] = std::min(out[j], q.u0[j]);
  }
  for (const auto& [j, k] : q.cc_pairs) {
    const Point2 z = project_comp_set({out[j], out[k]});
    out[j] = z.z1;
    out[k] = z.z2;
  }
  return out;
}

InnerResult pgm_solve(
    const QuadraticMpcc& q, std::vector<double> x0, const PgmOptions& opts,
    const std::function<void(std::span<const double>)>& on_iterate) {
  if (!opts.valid()) throw std::invalid_argument("pgm options out of range");

  std::vector<double> x = project_box_times_comp(x0, q);
  if (on_iterate) on_iterate(x);
  double fx = q.objective_value(x);

  InnerResult res;
  std::vector<double> shifted(x.size()), trial;
  for (long iter = 0; iter < opts.max_iters; ++iter) {
    const std::vector<double> g = q.objective_gradient(x);

    double eta = opts.eta_max;
    int backtracks = 0;
    double f_trial;
    for (;;) {
      for (std::size_t j = 0; j < x.size(); ++j)
        shifted[j] = x[j] - eta * g[j];
      trial = project_box_times_comp(shifted, q);
      f_trial = q.objective_value(trial);
      double decrease = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j)
        decrease += g[j] * (x[j] - trial[j]);
      if (f_trial <= fx - opts.c * decrease) break;
      if (++backtracks > kMaxBacktracks) {
        res = {std::move(x), std::numeric_limits<double>::infinity(), iter,
               InnerStatus::LineSearchStall, fx};
        return res;
      }
      eta *= opts.gamma;
    }

    double step_sq = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = (trial[j] - x[j]) / eta;
      step_sq += d * d;
    }
    const double scaled_step = std::sqrt(step_sq);

    x = std::move(trial);
    trial.clear();
    fx = f_trial;
    if (on_iterate) on_iterate(x);

    if (scaled_step <= opts.epsilon) {
      res = {std::move(x), scaled_step, iter + 1, InnerStatus::Converged, fx};
      return res;
    }
  }
  res = {std::move(x), std::numeric_limits<double>::infinity(), opts.max_iters,
         InnerStatus::MaxIters, fx};
  return res;
}

}  // namespace mpcc
