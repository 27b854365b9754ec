#ifndef MPCC_HOMOTOPY_HPP
#define MPCC_HOMOTOPY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpcc/envelope.hpp"
#include "mpcc/inner.hpp"
#include "mpcc/model.hpp"

// Two-stage homotopy: an optional feasibility stage followed by a
// continuation over geometrically shrinking lambda, warm-starting each
// smoothed subproblem and certifying the final iterate.

namespace mpcc {

struct HomotopyParams {
  double epsilon = 1e-8;
  double beta = 0.999;
  double lambda0 = 1.0;
  double rho = 0.8;
  int max_outer = 200;
  /// Known lower bound on f over the box; enables outer_iteration_bound.
  std::optional<double> f_lower;
  /// Experimental shrinking inner tolerance max(epsilon, 0.5^nu); the
  /// default keeps the tolerance fixed across outer iterations.
  bool shrink_epsilon = false;
  InnerOptions inner;

  bool valid() const {
    return epsilon > 0.0 && beta > 0.0 && beta < 1.0 && lambda0 > 0.0 &&
           rho > 0.0 && rho < 1.0 && max_outer > 0 && inner.valid();
  }
};

enum class SolveStatus { CertifiedStationary, OuterLimit, InnerFailure, Stage1Failure };
enum class Stage1Mode { NearFeasible, HeuristicStationary, Skipped };
enum class StationarityLabel { ApproxC, ApproxM, None };

const char* to_string(SolveStatus s);
const char* to_string(Stage1Mode m);
const char* to_string(StationarityLabel l);
const char* to_string(Cone c);
const char* to_string(InnerStatus s);

/// Per-constraint certificate entry: multiplier y_i, projected point
/// z_i, the cone the constraint is held to, and the membership verdict.
struct ConstraintVerdict {
  Point2 multiplier;
  Point2 projected;
  Cone cone = Cone::Clarke;
  bool member = false;
};

struct StationarityCertificate {
  double residual = 0.0;      // dist(-grad s, N_C(x))
  double cc_violation = 0.0;  // two-norm of min{G, H}
  std::vector<ConstraintVerdict> per_constraint;
  StationarityLabel label = StationarityLabel::None;
};

struct TraceRow {
  int outer = 0;              // nu
  double lambda = 0.0;        // rho^nu * lambda0
  std::vector<double> x;      // accepted outer iterate x^nu
  double s_value = 0.0;       // smoothed objective at x^nu
  double inner_residual = 0.0;
  double envelope_residual = 0.0;
  double cc_violation = 0.0;
  long inner_iters = 0;
};

struct SolveReport {
  std::vector<double> x_final;
  SolveStatus status = SolveStatus::OuterLimit;
  std::vector<TraceRow> trace;
  StationarityCertificate certificate;
  Stage1Mode stage1_mode = Stage1Mode::Skipped;
  double objective = 0.0;
  double lambda_final = 0.0;
  long inner_iters_total = 0;
};

struct Stage1Result {
  std::vector<double> x;
  Stage1Mode mode = Stage1Mode::NearFeasible;
  bool success = false;
  InnerResult inner;
};

/// Stage 1: minimize the envelope residual over the box from x_start.
/// Succeeds with NearFeasible when the residual reaches epsilon^2/4, or
/// with HeuristicStationary when only epsilon-stationarity of the
/// feasibility objective is reached.
Stage1Result stage1_feasibility(const MpccProblem& problem,
                                const HomotopyParams& params,
                                std::span<const double> x_start);

/// Full two-stage solve.  With skip_stage1 the caller asserts that
/// x_start already satisfies the near-feasibility initialization.
SolveReport solve(const MpccProblem& problem, const HomotopyParams& params,
                  std::span<const double> x_start, bool skip_stage1 = false);

/// Worst-case outer iteration count 1 + log_{1/rho}(4 lambda0 gap / eps^2)
/// for gap = f_x0 - f_lower; returns 1 when the gap is zero.  Requires
/// f_lower to be present in params.
double outer_iteration_bound(const HomotopyParams& params, double f_x0);

/// Evaluate the stationarity certificate at x for smoothing parameters
/// (lambda, beta) and accuracy epsilon.  x is projected onto the box
/// before evaluation.  Each constraint is held to the limiting cone when
/// well behaved and to the Clarke cone otherwise; the label is ApproxM
/// when every constraint is well behaved and passes the limiting test,
/// ApproxC when all pass the Clarke test, None when the residual or the
/// violation exceeds epsilon.
StationarityCertificate certify(const MpccProblem& problem,
                                std::span<const double> x, double lambda,
                                double beta, double epsilon);

}  // namespace mpcc

#endif  // MPCC_HOMOTOPY_HPP
