#ifndef MPCC_ENVELOPE_HPP
#define MPCC_ENVELOPE_HPP

#include <cmath>
#include <stdexcept>

// Closed-form geometry and calculus of the planar complementarity set
//
//   D = { z in R^2 : z1 >= 0, z2 >= 0, z1*z2 = 0 }
//
// and of the Moreau / Lasry-Lions envelopes of its indicator function.
// Everything in this header is a pure function of its arguments.

namespace mpcc {

/// A constraint-pair value z = (z1, z2).
struct Point2 {
  double z1 = 0.0;
  double z2 = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double norm(const Point2& z) { return std::hypot(z.z1, z.z2); }
inline double sqnorm(const Point2& z) { return z.z1 * z.z1 + z.z2 * z.z2; }

/// Pieces of the plane on which the double envelope has distinct closed
/// forms.  OMinus is the nonpositive orthant, TBeta the wedge
/// (1-beta)*z1 <= z2 <= z1/(1-beta) in the positive quadrant, HPlus and
/// HMinus the remaining half-plane-like areas above and below it.
enum class Region { OMinus, HPlus, HMinus, TBeta };

/// Envelope parameters lambda > 0 and beta = mu/lambda in (0,1).
struct EnvelopeParams {
  double lambda = 1.0;
  double beta = 0.999;

  /// mu = beta * lambda, always in (0, lambda).
  double mu() const { return beta * lambda; }

  bool valid() const {
    return lambda > 0.0 && beta > 0.0 && beta < 1.0 && std::isfinite(lambda);
  }
};

namespace detail {
inline void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0,1)");
}
inline double pos(double t) { return t > 0.0 ? t : 0.0; }
}  // namespace detail

/// Region tag of z for a fixed beta.  Evaluation order OMinus -> TBeta ->
/// HPlus -> HMinus with non-strict inequalities; points on a shared
/// boundary may carry either adjacent tag since the envelope formulas
/// agree there.
Region classify_region(const Point2& z, double beta);

/// Euclidean distance from z to the complementarity set,
/// sqrt(|z|^2 - max{[z1]+, [z2]+}^2).
double dist_to_comp_set(const Point2& z);

/// Euclidean projection onto the complementarity set.  On the ambiguous
/// diagonal z1 == z2 > 0 the first branch (z1, 0) is returned.
Point2 project_comp_set(const Point2& z);

/// Moreau envelope of the comp-set indicator: dist(z, D)^2 / (2*lambda).
double moreau_env(const Point2& z, double lambda);

/// Unique maximizer of the inner problem defining the double envelope,
/// a piecewise-linear map of z.  Requires 0 < mu < lambda.
Point2 double_env_maximizer(const Point2& z, double lambda, double mu);

/// Scaled Lasry-Lions double envelope r_beta of the comp-set indicator:
/// the double envelope with parameters (lambda, beta*lambda) equals
/// r_beta(z) / lambda for every lambda > 0.  Nonnegative, zero exactly
/// on the complementarity set, and sandwiched between dist^2/2 and
/// dist^2/(2(1-beta)).
double r_beta(const Point2& z, double beta);

/// Gradient of r_beta; globally Lipschitz and continuous across region
/// boundaries.
Point2 r_beta_grad(const Point2& z, double beta);

/// Lipschitz modulus of r_beta_grad: max{1/beta, 1/(1-beta)}.
double lipschitz_modulus(double beta);

/// Gradient-dominance constant min{1/(1-beta), (1-beta)/(beta*(2-beta))}.
/// The inequality |r_beta_grad|^2 / 2 >= pl_constant * r_beta holds for
/// beta >= 1/2; for beta < 1/2 it can fail on the diagonal of the TBeta
/// wedge, so callers relying on it should keep beta in [1/2, 1).
double pl_constant(double beta);

/// Clarke-variant projection: the ordinary projection outside the open
/// TBeta wedge, and the origin inside it.
Point2 project_comp_clarke(const Point2& z, double beta);

/// Normal cones of the complementarity set used by stationarity
/// certificates.  Regular is the smallest, Clarke the largest.
enum class Cone { Regular, Limiting, Clarke };

/// Membership test y in N(zbar) against the explicit cone case tables,
/// with absolute tolerance tol on every "= 0" / "> 0" comparison.
/// zbar must lie on the complementarity set within tol.
bool cone_membership(const Point2& y, const Point2& zbar, Cone cone,
                     double tol = 1e-8);

}  // namespace mpcc

#endif  // MPCC_ENVELOPE_HPP
