#ifndef MPCC_SMOOTHING_HPP
#define MPCC_SMOOTHING_HPP

#include <span>
#include <vector>

#include "mpcc/envelope.hpp"
#include "mpcc/model.hpp"

namespace mpcc {

/// Smoothed objective view over an MpccProblem:
///
///   value(x) = f(x) + (1/lambda) * sum_i r_beta(F_i(x))
///
/// with the exact gradient grad f + (1/lambda) * sum_i JF_i' r_beta_grad.
/// Constraint values and Jacobians are evaluated once per point and
/// shared between value/gradient/multiplier queries through a
/// last-point cache, so callbacks may be expensive.  The cache makes an
/// instance single-worker; hand each concurrent solve its own copy of
/// the view (copies are cheap and share nothing mutable).
class SmoothedProblem {
 public:
  SmoothedProblem(const MpccProblem& base, EnvelopeParams params);

  const MpccProblem& base() const { return *base_; }
  const EnvelopeParams& params() const { return params_; }

  double value(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;

  /// Per-constraint multipliers y_i = (1/lambda) r_beta_grad(F_i(x)).
  std::vector<Point2> multipliers(std::span<const double> x) const;

 private:
  const std::vector<Point2>& constraint_values(std::span<const double> x) const;
  const std::vector<CcJacobian>& constraint_jacobians(
      std::span<const double> x) const;
  void refresh(std::span<const double> x) const;

  const MpccProblem* base_;
  EnvelopeParams params_;

  // last-point evaluation cache
  mutable std::vector<double> cached_x_;
  mutable std::vector<Point2> cached_f_;
  mutable std::vector<CcJacobian> cached_jac_;
  mutable bool have_point_ = false;
  mutable bool have_jacobians_ = false;
};

}  // namespace mpcc

#endif  // MPCC_SMOOTHING_HPP
