#ifndef MPCC_MODEL_HPP
#define MPCC_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mpcc/envelope.hpp"

// Problem representation: smooth objective, complementarity pairs
// F_i = (G_i, H_i), and a box feasible set.  Constraint callbacks must be
// deterministic and side-effect free; solvers may cache their values per
// iterate.  An MpccProblem is immutable after construction and safe for
// concurrent read-only use.

namespace mpcc {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when file or instance data is structurally inconsistent.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Componentwise box l <= x <= u; entries may be -inf/+inf.
struct BoxSet {
  std::vector<double> lower;
  std::vector<double> upper;

  static BoxSet unbounded(std::size_t n) {
    return {std::vector<double>(n, -kInf), std::vector<double>(n, kInf)};
  }

  std::size_t dim() const { return lower.size(); }

  bool valid() const {
    if (lower.size() != upper.size()) return false;
    for (std::size_t j = 0; j < lower.size(); ++j)
      if (!(lower[j] <= upper[j])) return false;
    return true;
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] < lower[j] || x[j] > upper[j]) return false;
    return true;
  }

  double clamp1(double v, std::size_t j) const {
    if (v < lower[j]) return lower[j];
    if (v > upper[j]) return upper[j];
    return v;
  }

  void clamp(std::vector<double>& x) const {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = clamp1(x[j], j);
  }
};

/// Rows of the 2 x n Jacobian of a constraint pair.
struct CcJacobian {
  std::vector<double> grad_g;
  std::vector<double> grad_h;
};

/// One complementarity pair F_i = (G_i, H_i) with its Jacobian callback.
/// well_behaved is caller-asserted: set it only when the pair provably
/// never enters the open positive quadrant near the origin (equality and
/// inequality reformulations qualify; plain variable pairs do not).
struct CcPair {
  std::function<Point2(std::span<const double>)> eval;
  std::function<CcJacobian(std::span<const double>)> jacobian;
  bool well_behaved = false;
  bool constant_g = false;
  bool constant_h = false;
};

/// minimize f(x) over the box subject to F_i(x) in D for every pair.
struct MpccProblem {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> objective;
  std::function<std::vector<double>(std::span<const double>)> gradient;
  std::vector<CcPair> ccs;
  BoxSet box;
};

/// Symmetric sparse matrix, upper-triangle triplet storage (i <= j).
struct TripletMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row;
  std::vector<std::size_t> col;
  std::vector<double> value;

  void add(std::size_t i, std::size_t j, double v) {
    if (i > j) std::swap(i, j);
    row.push_back(i);
    col.push_back(j);
    value.push_back(v);
  }

  std::size_t nnz() const { return value.size(); }

  /// y = A x with the mirrored lower triangle applied implicitly.
  void symmetric_matvec(std::span<const double> x,
                        std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (std::size_t k = 0; k < value.size(); ++k) {
      const std::size_t i = row[k], j = col[k];
      y[i] += value[k] * x[j];
      if (i != j) y[j] += value[k] * x[i];
    }
  }
};

/// Norm used when aggregating the componentwise violation vector.
enum class Norm { Two, Inf };

/// Quadratic MPCC instance: minimize x'Qx/2 + g'x with variable layout
/// x = (x0, pair block, linear-CC block).  The box constrains x0 only;
/// variable-index pairs mean 0 <= x_j  perp  x_k >= 0; optional linear
/// inequalities A x0 + a <= 0 and linear complementarities
/// 0 <= x1  perp  N x0 + M x1 + q >= 0 act on the trailing block x1.
struct QuadraticMpcc {
  struct LinearIneq {
    std::vector<std::vector<double>> a_matrix;  // rows of A, each length n0
    std::vector<double> a_offset;               // a
  };
  struct LinearCc {
    std::vector<std::vector<double>> n_matrix;  // p1 x n0
    std::vector<std::vector<double>> m_matrix;  // p1 x p1
    std::vector<double> q_offset;                // q
  };

  std::size_t n0 = 0;
  TripletMatrix q_matrix;  // n x n
  std::vector<double> g;
  std::vector<double> l0;  // empty means unbounded below
  std::vector<double> u0;  // empty means unbounded above
  std::vector<std::pair<std::size_t, std::size_t>> cc_pairs;
  std::optional<LinearIneq> linear_ineq;
  std::optional<LinearCc> linear_cc;
  std::string name;
  std::optional<std::uint64_t> seed;

  std::size_t pair_count() const { return cc_pairs.size(); }
  std::size_t linear_cc_count() const {
    return linear_cc ? linear_cc->q_offset.size() : 0;
  }
  /// Total variable count n = n0 + 2*#pairs + #linear CCs.
  std::size_t dim() const {
    return n0 + 2 * pair_count() + linear_cc_count();
  }
  /// Total complementarity count (the "p" of the file format).
  std::size_t cc_count() const { return pair_count() + linear_cc_count(); }

  double objective_value(std::span<const double> x) const;
  std::vector<double> objective_gradient(std::span<const double> x) const;
  BoxSet box() const;

  /// Throws SchemaError if dimensions are inconsistent or pairs overlap.
  void validate() const;
};

using GradCallback = std::function<std::vector<double>(std::span<const double>)>;
using ValueCallback = std::function<double(std::span<const double>)>;

/// A scalar constraint c(x) with gradient, used for reformulation.
struct ScalarConstraint {
  ValueCallback value;
  GradCallback gradient;
};

/// Build an MpccProblem from general constraints.  Each equality c = 0
/// becomes the two pairs (c, 0) and (-c, 0); each inequality c <= 0
/// becomes (-c, 0).  Reformulated pairs are well behaved with constant
/// second component; user pairs keep their flags and follow the
/// reformulated ones in the output order.
MpccProblem from_general(ValueCallback objective, GradCallback gradient,
                         const std::vector<ScalarConstraint>& equalities,
                         const std::vector<ScalarConstraint>& inequalities,
                         std::vector<CcPair> ccs, BoxSet box);

/// Norm of the componentwise vector min{G_i(x), H_i(x)}; zero exactly on
/// feasible points.
double cc_violation(const MpccProblem& problem, std::span<const double> x,
                    Norm norm_kind);

/// Sum of r_beta over all constraint pairs at x.
double envelope_residual(const MpccProblem& problem, std::span<const double> x,
                         double beta);

/// Wire a QuadraticMpcc into callback form.  Constraint order: linear
/// inequality reformulations first, then variable pairs, then linear
/// complementarities.
MpccProblem quadratic_to_mpcc(const QuadraticMpcc& q);

}  // namespace mpcc

#endif  // MPCC_MODEL_HPP
