#include "mpcc/homotopy.hpp"

#include <cmath>
#include <stdexcept>

#include "mpcc/smoothing.hpp"

namespace mpcc {

namespace {
constexpr double kLambdaFloor = 1e-18;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::CertifiedStationary: return "CertifiedStationary";
    case SolveStatus::OuterLimit: return "OuterLimit";
    case SolveStatus::InnerFailure: return "InnerFailure";
    case SolveStatus::Stage1Failure: return "Stage1Failure";
  }
  return "?";
}

const char* to_string(Stage1Mode m) {
  switch (m) {
    case Stage1Mode::NearFeasible: return "NearFeasible";
    case Stage1Mode::HeuristicStationary: return "HeuristicStationary";
    case Stage1Mode::Skipped: return "Skipped";
  }
  return "?";
}

const char* to_string(StationarityLabel l) {
  switch (l) {
    case StationarityLabel::ApproxC: return "ApproxC";
    case StationarityLabel::ApproxM: return "ApproxM";
    case StationarityLabel::None: return "None";
  }
  return "?";
}

const char* to_string(Cone c) {
  switch (c) {
    case Cone::Regular: return "Regular";
    case Cone::Limiting: return "Limiting";
    case Cone::Clarke: return "Clarke";
  }
  return "?";
}

const char* to_string(InnerStatus s) {
  switch (s) {
    case InnerStatus::Converged: return "Converged";
    case InnerStatus::MaxIters: return "MaxIters";
    case InnerStatus::LineSearchStall: return "LineSearchStall";
  }
  return "?";
}

Stage1Result stage1_feasibility(const MpccProblem& problem,
                                const HomotopyParams& params,
                                std::span<const double> x_start) {
  if (!params.valid()) throw std::invalid_argument("homotopy params invalid");

  // Feasibility objective: the envelope residual itself.  Reuse the
  // smoothed machinery with a zero objective and unit lambda.
  MpccProblem feas;
  feas.dim = problem.dim;
  feas.objective = [](std::span<const double>) { return 0.0; };
  feas.gradient = [n = problem.dim](std::span<const double>) {
    return std::vector<double>(n, 0.0);
  };
  feas.ccs = problem.ccs;
  feas.box = problem.box;
  SmoothedProblem phi(feas, {1.0, params.beta});

  const double eps = params.epsilon;
  InnerOptions opts = params.inner;
  opts.tol = eps;
  opts.target_value.reset();
  opts.value_stop = eps * eps / 4.0;

  std::vector<double> x0(x_start.begin(), x_start.end());
  InnerResult ir = solve_inner(phi, std::move(x0), opts);

  Stage1Result out;
  out.inner = ir;
  out.x = ir.x;
  const double env = envelope_residual(problem, out.x, params.beta);
  if (env <= eps * eps / 4.0) {
    out.mode = Stage1Mode::NearFeasible;
    out.success = true;
  } else if (ir.residual <= eps) {
    out.mode = Stage1Mode::HeuristicStationary;
    out.success = true;
  } else {
    out.mode = Stage1Mode::HeuristicStationary;
    out.success = false;
  }
  return out;
}

double outer_iteration_bound(const HomotopyParams& params, double f_x0) {
  if (!params.f_lower)
    throw std::invalid_argument("outer_iteration_bound needs f_lower");
  const double gap = f_x0 - *params.f_lower;
  if (gap < 0.0) throw std::invalid_argument("f_x0 below the stated lower bound");
  if (gap == 0.0) return 1.0;  // degenerate: log of zero clamps to one check
  const double arg = 4.0 * params.lambda0 * gap /
                     (params.epsilon * params.epsilon);
  return 1.0 + std::log(arg) / std::log(1.0 / params.rho);
}

StationarityCertificate certify(const MpccProblem& problem,
                                std::span<const double> x, double lambda,
                                double beta, double epsilon) {
  std::vector<double> xc(x.begin(), x.end());
  problem.box.clamp(xc);

  SmoothedProblem sp(problem, {lambda, beta});
  StationarityCertificate cert;
  cert.residual = stationarity_residual(sp.gradient(xc), xc, problem.box);
  cert.cc_violation = cc_violation(problem, xc, Norm::Two);

  const std::vector<Point2> y = sp.multipliers(xc);
  bool all_well_behaved = true;
  bool all_assigned_ok = true;
  bool all_clarke_ok = true;
  for (std::size_t i = 0; i < problem.ccs.size(); ++i) {
    const Point2 f = problem.ccs[i].eval(xc);
    ConstraintVerdict v;
    v.multiplier = y[i];
    v.projected = project_comp_clarke(f, beta);
    v.cone = problem.ccs[i].well_behaved ? Cone::Limiting : Cone::Clarke;
    v.member = cone_membership(v.multiplier, v.projected, v.cone);
    all_well_behaved = all_well_behaved && problem.ccs[i].well_behaved;
    all_assigned_ok = all_assigned_ok && v.member;
    const bool clarke_ok =
        v.cone == Cone::Clarke
            ? v.member
            : (v.member ||
               cone_membership(v.multiplier, v.projected, Cone::Clarke));
    all_clarke_ok = all_clarke_ok && clarke_ok;
    cert.per_constraint.push_back(v);
  }

  const bool accurate = cert.residual <= epsilon && cert.cc_violation <= epsilon;
  if (accurate && !problem.ccs.empty() && all_well_behaved && all_assigned_ok)
    cert.label = StationarityLabel::ApproxM;
  else if (accurate && all_clarke_ok)
    cert.label = StationarityLabel::ApproxC;
  else
    cert.label = StationarityLabel::None;
  return cert;
}

SolveReport solve(const MpccProblem& problem, const HomotopyParams& params,
                  std::span<const double> x_start, bool skip_stage1) {
  if (!params.valid()) throw std::invalid_argument("homotopy params invalid");

  SolveReport report;
  std::vector<double> x0(x_start.begin(), x_start.end());
  problem.box.clamp(x0);

  if (skip_stage1) {
    report.stage1_mode = Stage1Mode::Skipped;
  } else {
    Stage1Result s1 = stage1_feasibility(problem, params, x0);
    report.stage1_mode = s1.mode;
    report.inner_iters_total += s1.inner.iters;
    x0 = std::move(s1.x);
    if (!s1.success) {
      report.status = SolveStatus::Stage1Failure;
      report.x_final = std::move(x0);
      report.objective = problem.objective(report.x_final);
      report.lambda_final = params.lambda0;
      report.certificate = certify(problem, report.x_final, params.lambda0,
                                   params.beta, params.epsilon);
      return report;
    }
  }

  const double eps = params.epsilon;
  double lambda = params.lambda0;
  std::vector<double> x_prev = x0;
  report.status = SolveStatus::OuterLimit;

  for (int nu = 1; nu <= params.max_outer; ++nu) {
    lambda *= params.rho;  // lambda^nu = rho^nu * lambda0, left to right
    if (lambda < kLambdaFloor) break;

    SmoothedProblem sp(problem, {lambda, params.beta});
    const double s_prev = sp.value(x_prev);
    const double s_init = sp.value(x0);
    // warm start at the better of the previous iterate and x0; ties keep
    // the homotopy path
    const std::vector<double>& warm = s_prev <= s_init ? x_prev : x0;
    const double target = std::min(s_prev, s_init);

    InnerOptions opts = params.inner;
    opts.tol = params.shrink_epsilon
                   ? std::max(eps, std::pow(0.5, nu))
                   : eps;
    opts.target_value = target;
    opts.value_stop.reset();

    InnerResult ir = solve_inner(sp, warm, opts);
    report.inner_iters_total += ir.iters;

    TraceRow rowdata{nu,
                     lambda,
                     ir.x,
                     ir.value,
                     ir.residual,
                     envelope_residual(problem, ir.x, params.beta),
                     cc_violation(problem, ir.x, Norm::Two),
                     ir.iters};
    report.trace.push_back(rowdata);
    report.lambda_final = lambda;

    if (ir.status != InnerStatus::Converged) {
      report.status = SolveStatus::InnerFailure;
      report.x_final = std::move(ir.x);
      report.objective = problem.objective(report.x_final);
      report.certificate =
          certify(problem, report.x_final, lambda, params.beta, eps);
      return report;
    }

    x_prev = std::move(ir.x);

    if (rowdata.envelope_residual <= eps * eps / 2.0) {
      StationarityCertificate cert =
          certify(problem, x_prev, lambda, params.beta, eps);
      bool members_ok = true;
      for (const auto& v : cert.per_constraint) members_ok &= v.member;
      if (cert.residual <= eps && cert.cc_violation <= eps && members_ok) {
        report.status = SolveStatus::CertifiedStationary;
        report.certificate = std::move(cert);
        report.x_final = x_prev;
        report.objective = problem.objective(report.x_final);
        return report;
      }
      // stopping value reached but the certificate failed to validate;
      // keep tightening
    }
  }

  report.x_final = x_prev;
  report.objective = problem.objective(report.x_final);
  if (report.lambda_final == 0.0) report.lambda_final = lambda;
  report.certificate = certify(problem, report.x_final,
                               report.lambda_final > 0.0 ? report.lambda_final
                                                         : params.lambda0,
                               params.beta, eps);
  return report;
}

}  // namespace mpcc
