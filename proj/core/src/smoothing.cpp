#include "mpcc/smoothing.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpcc {

SmoothedProblem::SmoothedProblem(const MpccProblem& base, EnvelopeParams params)
    : base_(&base), params_(params) {
  if (!params_.valid())
    throw std::invalid_argument("envelope parameters out of range");
}

void SmoothedProblem::refresh(std::span<const double> x) const {
  if (have_point_ && cached_x_.size() == x.size() &&
      std::equal(x.begin(), x.end(), cached_x_.begin()))
    return;
  cached_x_.assign(x.begin(), x.end());
  cached_f_.clear();
  cached_f_.reserve(base_->ccs.size());
  for (const auto& cc : base_->ccs) cached_f_.push_back(cc.eval(x));
  have_point_ = true;
  have_jacobians_ = false;
}

const std::vector<Point2>& SmoothedProblem::constraint_values(
    std::span<const double> x) const {
  refresh(x);
  return cached_f_;
}

const std::vector<CcJacobian>& SmoothedProblem::constraint_jacobians(
    std::span<const double> x) const {
  refresh(x);
  if (!have_jacobians_) {
    cached_jac_.clear();
    cached_jac_.reserve(base_->ccs.size());
    for (const auto& cc : base_->ccs) cached_jac_.push_back(cc.jacobian(x));
    have_jacobians_ = true;
  }
  return cached_jac_;
}

double SmoothedProblem::value(std::span<const double> x) const {
  const auto& f = constraint_values(x);
  double penalty = 0.0;
  for (const Point2& z : f) penalty += r_beta(z, params_.beta);
  return base_->objective(x) + penalty / params_.lambda;
}

std::vector<double> SmoothedProblem::gradient(std::span<const double> x) const {
  const auto& f = constraint_values(x);
  const auto& jac = constraint_jacobians(x);
  std::vector<double> grad = base_->gradient(x);
  const double inv_lambda = 1.0 / params_.lambda;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point2 r = r_beta_grad(f[i], params_.beta);
    const auto& gi = jac[i].grad_g;
    const auto& hi = jac[i].grad_h;
    for (std::size_t j = 0; j < grad.size(); ++j)
      grad[j] += inv_lambda * (r.z1 * gi[j] + r.z2 * hi[j]);
  }
  return grad;
}

std::vector<Point2> SmoothedProblem::multipliers(
    std::span<const double> x) const {
  const auto& f = constraint_values(x);
  std::vector<Point2> y;
  y.reserve(f.size());
  const double inv_lambda = 1.0 / params_.lambda;
  for (const Point2& z : f) {
    const Point2 r = r_beta_grad(z, params_.beta);
    y.push_back({inv_lambda * r.z1, inv_lambda * r.z2});
  }
  return y;
}

}  // namespace mpcc
