#ifndef MPCC_BASELINE_HPP
#define MPCC_BASELINE_HPP

#include <functional>
#include <span>
#include <vector>

#include "mpcc/inner.hpp"
#include "mpcc/model.hpp"

// Projected gradient baseline for bound-constrained quadratic MPCCs.
// Every iterate is projected onto [l0,u0] x D x ... x D, so the
// complementarity constraints hold exactly along the whole trajectory.

namespace mpcc {

struct PgmOptions {
  double eta_max = 1.0;      // initial trial step
  double gamma = 0.5;        // backtracking factor
  double c = 1e-4;           // sufficient-decrease constant
  double epsilon = 1e-8;     // stop when |(x+ - x)/eta| <= epsilon
  long max_iters = 200000;

  bool valid() const {
    return eta_max > 0.0 && gamma > 0.0 && gamma < 1.0 && c > 0.0 && c < 1.0 &&
           epsilon > 0.0 && max_iters > 0;
  }
};

/// Projection onto the feasible set of a bound-constrained quadratic
/// MPCC: clamp the x0 block into its box and project every variable
/// pair onto the complementarity set (deterministic tie toward the
/// first coordinate).  Requires the bound-constrained partition: no
/// linear constraints, and no box bounds on paired variables.
std::vector<double> project_box_times_comp(std::span<const double> x,
                                           const QuadraticMpcc& q);

/// Armijo projected-gradient loop on f(x) = x'Qx/2 + g'x over the
/// product set above.  Terminates when the scaled step length drops to
/// epsilon, with MaxIters / LineSearchStall reported distinctly.  The
/// optional observer sees every iterate, starting with the projected x0.
InnerResult pgm_solve(
    const QuadraticMpcc& q, std::vector<double> x0, const PgmOptions& opts,
    const std::function<void(std::span<const double>)>& on_iterate = {});

}  // namespace mpcc

#endif  // MPCC_BASELINE_HPP
