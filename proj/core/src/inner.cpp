#include "mpcc/inner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpcc {

namespace {

constexpr int kMaxBacktracks = 60;
constexpr double kStepFloor = 1e-12;
constexpr double kStepCeil = 1e12;
constexpr double kTargetSlack = 1e-12;
constexpr double kMachineEps = 2.220446049250313e-16;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

double stationarity_residual(std::span<const double> g,
                             std::span<const double> x, const BoxSet& box) {
  if (x.size() != box.dim() || g.size() != x.size())
    throw std::invalid_argument("residual: dimension mismatch");
  if (!box.contains(x))
    throw std::domain_error("residual: point lies outside the box");
  double sq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d;
    if (box.lower[j] == box.upper[j])
      d = 0.0;
    else if (x[j] == box.lower[j])
      d = std::max(-g[j], 0.0);
    else if (x[j] == box.upper[j])
      d = std::max(g[j], 0.0);
    else
      d = std::abs(g[j]);
    sq += d * d;
  }
  return std::sqrt(sq);
}

// Projected gradient with Armijo backtracking and safeguarded spectral
// (Barzilai-Borwein) steps.  Two pathologies of the plain method on
// piecewise-quadratic landscapes are handled explicitly:
//
//  * the spectral step can lock onto the stiffest curvature or fall
//    into a short accept/reject orbit; stretches without value or
//    residual progress therefore drop the pair memory and restart the
//    step from a staggered gradient scale, and
//
//  * once the attainable per-step decrease falls below the rounding
//    noise of the objective, the backtracking test carries no
//    information; after repeated restarts the solver interleaves a
//    bounded batch of fixed steps at the inverse of the largest
//    observed curvature, the classical stable step, with a growth
//    guard instead of a per-step value test.
InnerResult solve_inner(
    const std::function<double(std::span<const double>)>& value,
    const std::function<std::vector<double>(std::span<const double>)>& gradient,
    const BoxSet& box, std::vector<double> x0, const InnerOptions& opts) {
  if (!opts.valid()) throw std::invalid_argument("inner options out of range");
  if (x0.size() != box.dim())
    throw std::invalid_argument("start point dimension mismatch");

  std::vector<double> x = std::move(x0);
  box.clamp(x);

  double fx = value(x);
  std::vector<double> g = gradient(x);

  std::vector<double> x_prev, g_prev, trial(x.size());
  double step_prev = 0.0;
  double kappa_hi = 0.0;  // largest curvature seen along accepted pairs

  constexpr long kStallWindow = 50;
  constexpr long kResidualWindow = 120;
  constexpr long kPolishBatch = 4000;
  double f_anchor = fx;
  long anchor_iter = 0;
  double res_anchor = std::numeric_limits<double>::infinity();
  long res_anchor_iter = 0;
  int restart_phase = 0;

  InnerResult res;
  long iter = 0;
  for (;;) {
    const double residual = stationarity_residual(g, x, box);

    const bool value_ok =
        !opts.target_value || fx <= *opts.target_value + kTargetSlack;
    const bool hit_floor = opts.value_stop && fx <= *opts.value_stop;
    if (hit_floor || (residual <= opts.tol && value_ok)) {
      res = {std::move(x), residual, iter, InnerStatus::Converged, fx};
      return res;
    }
    if (iter >= opts.max_iters) {
      res = {std::move(x), residual, iter, InnerStatus::MaxIters, fx};
      return res;
    }

    // stall bookkeeping
    if (residual <= 0.95 * res_anchor) {
      res_anchor = residual;
      res_anchor_iter = iter;
    }
    bool stalled = false;
    if (fx < f_anchor - 4.0 * kMachineEps * (1.0 + std::abs(f_anchor))) {
      f_anchor = fx;
      anchor_iter = iter;
    } else if (iter - anchor_iter >= kStallWindow) {
      stalled = true;
    }
    if (iter - res_anchor_iter >= kResidualWindow) stalled = true;

    if (stalled) {
      x_prev.clear();
      g_prev.clear();
      ++restart_phase;
      f_anchor = fx;
      anchor_iter = iter;
      res_anchor = residual;
      res_anchor_iter = iter;

      if (restart_phase % 3 == 0 && kappa_hi > 0.0) {
        // fixed-step polish batch at the stable step
        double eta = 1.0 / kappa_hi;
        double f_mark = fx;
        long batch = 0;
        while (batch < kPolishBatch && iter + batch < opts.max_iters) {
          for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = box.clamp1(x[j] - eta * g[j], j);
          g = gradient(x);
          ++batch;
          if (batch % 250 == 0) {
            const double f_now = value(x);
            if (!std::isfinite(f_now) ||
                f_now > f_mark + 256.0 * kMachineEps * (1.0 + std::abs(f_mark)))
              eta *= 0.5;  // a stiffer piece appeared; damp the batch
            f_mark = std::min(f_mark, f_now);
            if (stationarity_residual(g, x, box) <= opts.tol) break;
          }
        }
        iter += batch;
        fx = value(x);
        f_anchor = fx;
        anchor_iter = iter;
        continue;
      }
    }

    // initial step size
    double step;
    if (const auto* fixed = std::get_if<FixedStep>(&opts.step_init)) {
      step = fixed->step;
    } else if (x_prev.empty()) {
      // non-dyadic stagger: backtracking cannot quantize two restart
      // scales onto the same accepted step
      step = std::pow(0.6, restart_phase % 13) / std::max(1.0, norm2(g));
    } else {
      // alternate the two Barzilai-Borwein estimates <s,s>/<s,y> and
      // <s,y>/<y,y>; the short variant stabilizes kink-heavy stretches.
      // Reuse the previous step when the curvature estimate is not
      // positive.
      double ss = 0.0, sy = 0.0, yy = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double s = x[j] - x_prev[j];
        const double y = g[j] - g_prev[j];
        ss += s * s;
        sy += s * y;
        yy += y * y;
      }
      if (sy > 0.0) {
        step = (iter % 2 == 0 ? ss / sy : sy / yy);
        kappa_hi = std::max(kappa_hi, sy / ss);
      } else {
        step = step_prev;
      }
      step = std::clamp(step, kStepFloor, kStepCeil);
    }

    // Armijo backtracking on the projected step; non-finite trial
    // values count as rejections so overflowing directions get cut.
    // The rounding allowance keeps the test meaningful once the
    // requested decrease drops to the evaluation noise of the
    // objective itself.
    const double noise = 4.0 * kMachineEps * (1.0 + std::abs(fx));
    int backtracks = 0;
    double f_trial;
    for (;;) {
      for (std::size_t j = 0; j < x.size(); ++j)
        trial[j] = box.clamp1(x[j] - step * g[j], j);
      f_trial = value(trial);
      double decrease = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j)
        decrease += g[j] * (x[j] - trial[j]);
      if (std::isfinite(f_trial) &&
          f_trial <= fx - opts.armijo_c * decrease + noise)
        break;
      if (++backtracks > kMaxBacktracks) {
        res = {std::move(x), residual, iter, InnerStatus::LineSearchStall, fx};
        return res;
      }
      step *= opts.backtrack_factor;
    }

    ++iter;
    if (trial == x) {
      // accepted movement underflowed; a degenerate pair would pin the
      // spectral step, so force a fresh restart scale instead
      x_prev.clear();
      g_prev.clear();
      ++restart_phase;
      f_anchor = fx;
      anchor_iter = iter;
      res_anchor = residual;
      res_anchor_iter = iter;
      continue;
    }
    x_prev = x;
    g_prev = g;
    step_prev = step;
    x.swap(trial);
    fx = f_trial;
    g = gradient(x);
  }
}

InnerResult solve_inner(const SmoothedProblem& sp, std::vector<double> x0,
                        const InnerOptions& opts) {
  return solve_inner(
      [&sp](std::span<const double> x) { return sp.value(x); },
      [&sp](std::span<const double> x) { return sp.gradient(x); },
      sp.base().box, std::move(x0), opts);
}

}  // namespace mpcc
