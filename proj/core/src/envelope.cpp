#include "mpcc/envelope.hpp"

#include <algorithm>

namespace mpcc {

using detail::pos;
using detail::require_beta;

Region classify_region(const Point2& z, double beta) {
  require_beta(beta);
  if (z.z1 <= 0.0 && z.z2 <= 0.0) return Region::OMinus;
  if (z.z1 > 0.0 && (1.0 - beta) * z.z1 <= z.z2 &&
      z.z2 <= z.z1 / (1.0 - beta))
    return Region::TBeta;
  if (z.z2 >= pos(z.z1) / (1.0 - beta)) return Region::HPlus;
  return Region::HMinus;
}

double dist_to_comp_set(const Point2& z) {
  const double keep = std::max(pos(z.z1), pos(z.z2));
  const double d2 = sqnorm(z) - keep * keep;
  return std::sqrt(std::max(d2, 0.0));
}

Point2 project_comp_set(const Point2& z) {
  if (z.z1 <= 0.0 || z.z2 <= 0.0) return {pos(z.z1), pos(z.z2)};
  // strictly positive quadrant: drop the smaller coordinate, ties -> (z1, 0)
  if (z.z1 >= z.z2) return {z.z1, 0.0};
  return {0.0, z.z2};
}

double moreau_env(const Point2& z, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double d = dist_to_comp_set(z);
  return d * d / (2.0 * lambda);
}

Point2 double_env_maximizer(const Point2& z, double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !(mu < lambda))
    throw std::invalid_argument("double envelope requires 0 < mu < lambda");
  const double stretch = lambda / (lambda - mu);
  switch (classify_region(z, mu / lambda)) {
    case Region::OMinus:
      return {stretch * z.z1, stretch * z.z2};
    case Region::HPlus:
      return {stretch * z.z1, z.z2};
    case Region::HMinus:
      return {z.z1, stretch * z.z2};
    case Region::TBeta: {
      const double t = lambda / (2.0 * lambda - mu) * (z.z1 + z.z2);
      return {t, t};
    }
  }
  return z;  // unreachable
}

double r_beta(const Point2& z, double beta) {
  switch (classify_region(z, beta)) {
    case Region::OMinus:
      return sqnorm(z) / (2.0 * (1.0 - beta));
    case Region::TBeta: {
      const double s = z.z1 + z.z2;
      return s * s / (2.0 * beta * (2.0 - beta)) - sqnorm(z) / (2.0 * beta);
    }
    case Region::HPlus:
    case Region::HMinus: {
      const double m = std::min(z.z1, z.z2);
      return m * m / (2.0 * (1.0 - beta));
    }
  }
  return 0.0;  // unreachable
}

Point2 r_beta_grad(const Point2& z, double beta) {
  switch (classify_region(z, beta)) {
    case Region::OMinus:
      return {z.z1 / (1.0 - beta), z.z2 / (1.0 - beta)};
    case Region::TBeta: {
      const double s = (z.z1 + z.z2) / (beta * (2.0 - beta));
      return {s - z.z1 / beta, s - z.z2 / beta};
    }
    case Region::HPlus:
      return {z.z1 / (1.0 - beta), 0.0};
    case Region::HMinus:
      return {0.0, z.z2 / (1.0 - beta)};
  }
  return {};  // unreachable
}

double lipschitz_modulus(double beta) {
  require_beta(beta);
  return std::max(1.0 / beta, 1.0 / (1.0 - beta));
}

double pl_constant(double beta) {
  require_beta(beta);
  return std::min(1.0 / (1.0 - beta), (1.0 - beta) / (beta * (2.0 - beta)));
}

Point2 project_comp_clarke(const Point2& z, double beta) {
  require_beta(beta);
  const bool interior_wedge = z.z1 > 0.0 && (1.0 - beta) * z.z1 < z.z2 &&
                              z.z2 < z.z1 / (1.0 - beta);
  if (interior_wedge) return {0.0, 0.0};
  return project_comp_set(z);
}

namespace {

bool in_nonpositive_orthant(const Point2& y, double tol) {
  return y.z1 <= tol && y.z2 <= tol;
}

bool in_comp_set(const Point2& y, double tol) {
  return y.z1 >= -tol && y.z2 >= -tol &&
         (std::abs(y.z1) <= tol || std::abs(y.z2) <= tol);
}

bool in_nonnegative_orthant(const Point2& y, double tol) {
  return y.z1 >= -tol && y.z2 >= -tol;
}

}  // namespace

bool cone_membership(const Point2& y, const Point2& zbar, Cone cone,
                     double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (dist_to_comp_set(zbar) > tol)
    throw std::domain_error("base point is not on the complementarity set");

  if (zbar.z1 > tol) {
    // axis point (q, 0), q > 0: all three cones equal {0} x R
    return std::abs(y.z1) <= tol;
  }
  if (zbar.z2 > tol) {
    // axis point (0, q), q > 0: all three cones equal R x {0}
    return std::abs(y.z2) <= tol;
  }
  // origin
  switch (cone) {
    case Cone::Regular:
      return in_nonpositive_orthant(y, tol);
    case Cone::Limiting:
      return in_nonpositive_orthant(y, tol) || in_comp_set(y, tol);
    case Cone::Clarke:
      return in_nonpositive_orthant(y, tol) || in_comp_set(y, tol) ||
             in_nonnegative_orthant(y, tol);
  }
  return false;  // unreachable
}

}  // namespace mpcc
