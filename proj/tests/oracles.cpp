#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpcc::oracle {

namespace {

double sq(double t) { return t * t; }

// squared distance from w to the union of the two nonnegative axes,
// written out directly from the set description
double axis_sqdist(double w1, double w2) {
  const double to_x_axis = sq(w1 - std::max(w1, 0.0)) + sq(w2);
  const double to_y_axis = sq(w1) + sq(w2 - std::max(w2, 0.0));
  return std::min(to_x_axis, to_y_axis);
}

}  // namespace

double brute_moreau(const Point2& z, double lambda, const GridSpec& grid) {
  if (grid.steps < 3 || !(grid.lo < grid.hi))
    throw std::invalid_argument("bad grid");
  const double step = (grid.hi - grid.lo) / (grid.steps - 1);

  double best = sq(z.z1) + sq(z.z2);  // candidate: the origin
  auto consider = [&](double t) {
    if (t < 0.0) return;
    best = std::min(best, sq(t - z.z1) + sq(z.z2));  // (t, 0)
    best = std::min(best, sq(z.z1) + sq(t - z.z2));  // (0, t)
  };
  for (int i = 0; i < grid.steps; ++i) consider(grid.lo + i * step);
  consider(z.z1);  // exact foot points
  consider(z.z2);
  return best / (2.0 * lambda);
}

double brute_double_envelope(const Point2& z, double lambda, double mu,
                             const GridSpec& grid) {
  if (!(0.0 < mu && mu < lambda)) throw std::invalid_argument("need 0<mu<lambda");
  if (grid.steps < 3 || !(grid.lo < grid.hi))
    throw std::invalid_argument("bad grid");

  auto value = [&](double w1, double w2) {
    return axis_sqdist(w1, w2) / (2.0 * lambda) -
           (sq(w1 - z.z1) + sq(w2 - z.z2)) / (2.0 * mu);
  };

  const double step = (grid.hi - grid.lo) / (grid.steps - 1);
  double best = value(grid.lo, grid.lo);
  double b1 = grid.lo, b2 = grid.lo;
  for (int i = 0; i < grid.steps; ++i) {
    const double w1 = grid.lo + i * step;
    for (int j = 0; j < grid.steps; ++j) {
      const double w2 = grid.lo + j * step;
      const double v = value(w1, w2);
      if (v > best) {
        best = v;
        b1 = w1;
        b2 = w2;
      }
    }
  }

  // one refinement pass around the best cell
  const int fine = 41;
  const double r = 2.0 * step;
  const double fstep = 2.0 * r / (fine - 1);
  for (int i = 0; i < fine; ++i) {
    const double w1 = b1 - r + i * fstep;
    for (int j = 0; j < fine; ++j) {
      const double w2 = b2 - r + j * fstep;
      best = std::max(best, value(w1, w2));
    }
  }
  return best;
}

std::vector<double> finite_diff_grad(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  std::vector<double> pt(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double orig = pt[j];
    pt[j] = orig + h;
    const double fp = f(pt);
    pt[j] = orig - h;
    const double fm = f(pt);
    pt[j] = orig;
    grad[j] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

}  // namespace mpcc::oracle
