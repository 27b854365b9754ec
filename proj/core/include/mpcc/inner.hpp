#ifndef MPCC_INNER_HPP
#define MPCC_INNER_HPP

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mpcc/model.hpp"
#include "mpcc/smoothing.hpp"

// Box-projected first-order solver.  Projected gradient with Armijo
// backtracking and a safeguarded Barzilai-Borwein initial step; meets
// the usual O(eps^-2) first-order complexity for smooth objectives over
// boxes.  Deterministic: identical inputs produce bit-identical iterate
// sequences.

namespace mpcc {

/// Initial step-size rule per iteration.
struct BarzilaiBorwein {};
struct FixedStep {
  double step = 1.0;
};
using StepInit = std::variant<BarzilaiBorwein, FixedStep>;

struct InnerOptions {
  double tol = 1e-8;            // target stationarity residual
  long max_iters = 50000;       // accepted steps per subproblem
  double armijo_c = 1e-4;       // sufficient-decrease constant
  double backtrack_factor = 0.5;
  StepInit step_init = BarzilaiBorwein{};
  /// Converge only once the objective is at or below this value
  /// (within 1e-12); used to enforce the homotopy descent chain.
  std::optional<double> target_value;
  /// Declare success as soon as the objective value drops to this
  /// level, regardless of the residual; used by feasibility phases
  /// whose global minimum is known.
  std::optional<double> value_stop;

  bool valid() const {
    return tol > 0.0 && max_iters > 0 && armijo_c > 0.0 && armijo_c < 1.0 &&
           backtrack_factor > 0.0 && backtrack_factor < 1.0;
  }
};

enum class InnerStatus { Converged, MaxIters, LineSearchStall };

struct InnerResult {
  std::vector<double> x;
  double residual = 0.0;  // stationarity residual at x
  long iters = 0;          // accepted steps
  InnerStatus status = InnerStatus::MaxIters;
  double value = 0.0;      // objective at x
};

/// Euclidean distance from -g to the normal cone of the box at x:
/// componentwise |g_j| strictly inside, [-g_j]+ at the lower bound,
/// [g_j]+ at the upper bound, 0 for fixed components.  Bound activity is
/// decided by exact comparison; solvers keep iterates exactly clamped.
/// Throws std::domain_error when x lies outside the box.
double stationarity_residual(std::span<const double> g,
                             std::span<const double> x, const BoxSet& box);

/// Minimize a smooth objective over a box from x0 (clamped into the box
/// before the first iteration).  The objective value sequence is
/// non-increasing and every iterate is feasible.
InnerResult solve_inner(
    const std::function<double(std::span<const double>)>& value,
    const std::function<std::vector<double>(std::span<const double>)>& gradient,
    const BoxSet& box, std::vector<double> x0, const InnerOptions& opts);

/// Convenience overload for smoothed subproblems.
InnerResult solve_inner(const SmoothedProblem& sp, std::vector<double> x0,
                        const InnerOptions& opts);

}  // namespace mpcc

#endif  // MPCC_INNER_HPP
