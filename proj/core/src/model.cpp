#include "mpcc/model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

namespace mpcc {

double QuadraticMpcc::objective_value(std::span<const double> x) const {
  std::vector<double> qx;
  q_matrix.symmetric_matvec(x, qx);
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    acc += (0.5 * qx[j] + g[j]) * x[j];
  return acc;
}

std::vector<double> QuadraticMpcc::objective_gradient(
    std::span<const double> x) const {
  std::vector<double> qx;
  q_matrix.symmetric_matvec(x, qx);
  for (std::size_t j = 0; j < x.size(); ++j) qx[j] += g[j];
  return qx;
}

BoxSet QuadraticMpcc::box() const {
  const std::size_t n = dim();
  BoxSet b = BoxSet::unbounded(n);
  for (std::size_t j = 0; j < n0; ++j) {
    if (!l0.empty()) b.lower[j] = l0[j];
    if (!u0.empty()) b.upper[j] = u0[j];
  }
  return b;
}

void QuadraticMpcc::validate() const {
  const std::size_t n = dim();
  if (q_matrix.n != n)
    throw SchemaError("Q dimension does not match the variable count");
  for (std::size_t k = 0; k < q_matrix.nnz(); ++k)
    if (q_matrix.row[k] >= n || q_matrix.col[k] >= n)
      throw SchemaError("Q triplet index out of range");
  if (g.size() != n) throw SchemaError("g length does not match n");
  if (!l0.empty() && l0.size() != n0) throw SchemaError("l0 length != n0");
  if (!u0.empty() && u0.size() != n0) throw SchemaError("u0 length != n0");
  if (!l0.empty() && !u0.empty())
    for (std::size_t j = 0; j < n0; ++j)
      if (!(l0[j] <= u0[j])) throw SchemaError("l0 > u0 at some component");

  std::set<std::size_t> used;
  for (const auto& [j, k] : cc_pairs) {
    if (j >= n || k >= n) throw SchemaError("cc pair index out of range");
    if (j == k || !used.insert(j).second || !used.insert(k).second)
      throw SchemaError("cc pair indices must be disjoint");
  }
  if (linear_ineq) {
    if (linear_ineq->a_matrix.size() != linear_ineq->a_offset.size())
      throw SchemaError("A row count != a length");
    for (const auto& r : linear_ineq->a_matrix)
      if (r.size() != n0) throw SchemaError("A row length != n0");
  }
  if (linear_cc) {
    const std::size_t p1 = linear_cc->q_offset.size();
    if (linear_cc->n_matrix.size() != p1 || linear_cc->m_matrix.size() != p1)
      throw SchemaError("N/M row count != q length");
    for (const auto& r : linear_cc->n_matrix)
      if (r.size() != n0) throw SchemaError("N row length != n0");
    for (const auto& r : linear_cc->m_matrix)
      if (r.size() != p1) throw SchemaError("M row length != p1");
  }
}

MpccProblem from_general(ValueCallback objective, GradCallback gradient,
                         const std::vector<ScalarConstraint>& equalities,
                         const std::vector<ScalarConstraint>& inequalities,
                         std::vector<CcPair> ccs, BoxSet box) {
  MpccProblem out;
  out.dim = box.dim();
  out.objective = std::move(objective);
  out.gradient = std::move(gradient);
  out.box = std::move(box);

  const std::size_t n = out.dim;
  auto zero_row = [n](std::span<const double>) {
    return std::vector<double>(n, 0.0);
  };

  auto make_pair = [&](ScalarConstraint c, bool negate) {
    CcPair pair;
    pair.well_behaved = true;
    pair.constant_h = true;
    pair.eval = [c, negate](std::span<const double> x) {
      const double v = c.value(x);
      return Point2{negate ? -v : v, 0.0};
    };
    pair.jacobian = [c, negate, zero_row](std::span<const double> x) {
      CcJacobian jac;
      jac.grad_g = c.gradient(x);
      if (negate)
        for (double& t : jac.grad_g) t = -t;
      jac.grad_h = zero_row(x);
      return jac;
    };
    return pair;
  };

  for (const auto& eq : equalities) {
    out.ccs.push_back(make_pair(eq, false));
    out.ccs.push_back(make_pair(eq, true));
  }
  for (const auto& ineq : inequalities) out.ccs.push_back(make_pair(ineq, true));
  for (auto& cc : ccs) out.ccs.push_back(std::move(cc));
  return out;
}

double cc_violation(const MpccProblem& problem, std::span<const double> x,
                    Norm norm_kind) {
  double sq = 0.0, amax = 0.0;
  for (const auto& cc : problem.ccs) {
    const Point2 f = cc.eval(x);
    const double m = std::min(f.z1, f.z2);
    sq += m * m;
    amax = std::max(amax, std::abs(m));
  }
  return norm_kind == Norm::Two ? std::sqrt(sq) : amax;
}

double envelope_residual(const MpccProblem& problem, std::span<const double> x,
                         double beta) {
  double acc = 0.0;
  for (const auto& cc : problem.ccs) acc += r_beta(cc.eval(x), beta);
  return acc;
}

namespace {

double dot_block(const std::vector<double>& coeffs, std::span<const double> x,
                 std::size_t offset) {
  double acc = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * x[offset + j];
  return acc;
}

}  // namespace

MpccProblem quadratic_to_mpcc(const QuadraticMpcc& q) {
  q.validate();
  const std::size_t n = q.dim();

  // shared copy keeps the instance alive inside the callbacks
  auto data = std::make_shared<const QuadraticMpcc>(q);

  ValueCallback objective = [data](std::span<const double> x) {
    return data->objective_value(x);
  };
  GradCallback gradient = [data](std::span<const double> x) {
    return data->objective_gradient(x);
  };

  std::vector<ScalarConstraint> inequalities;
  if (q.linear_ineq) {
    for (std::size_t r = 0; r < q.linear_ineq->a_offset.size(); ++r) {
      ScalarConstraint c;
      c.value = [data, r](std::span<const double> x) {
        return dot_block(data->linear_ineq->a_matrix[r], x, 0) +
               data->linear_ineq->a_offset[r];
      };
      c.gradient = [data, r, n](std::span<const double>) {
        std::vector<double> grad(n, 0.0);
        const auto& row = data->linear_ineq->a_matrix[r];
        for (std::size_t j = 0; j < row.size(); ++j) grad[j] = row[j];
        return grad;
      };
      inequalities.push_back(std::move(c));
    }
  }

  std::vector<CcPair> pairs;
  for (const auto& [j, k] : q.cc_pairs) {
    CcPair pair;
    pair.well_behaved = false;
    pair.eval = [j = j, k = k](std::span<const double> x) {
      return Point2{x[j], x[k]};
    };
    pair.jacobian = [j = j, k = k, n](std::span<const double>) {
      CcJacobian jac;
      jac.grad_g.assign(n, 0.0);
      jac.grad_h.assign(n, 0.0);
      jac.grad_g[j] = 1.0;
      jac.grad_h[k] = 1.0;
      return jac;
    };
    pairs.push_back(std::move(pair));
  }

  if (q.linear_cc) {
    const std::size_t x1_offset = q.n0 + 2 * q.pair_count();
    const std::size_t p1 = q.linear_cc_count();
    for (std::size_t r = 0; r < p1; ++r) {
      CcPair pair;
      pair.well_behaved = false;
      pair.eval = [data, r, x1_offset](std::span<const double> x) {
        const double h = dot_block(data->linear_cc->n_matrix[r], x, 0) +
                         dot_block(data->linear_cc->m_matrix[r], x, x1_offset) +
                         data->linear_cc->q_offset[r];
        return Point2{x[x1_offset + r], h};
      };
      pair.jacobian = [data, r, x1_offset, n](std::span<const double>) {
        CcJacobian jac;
        jac.grad_g.assign(n, 0.0);
        jac.grad_h.assign(n, 0.0);
        jac.grad_g[x1_offset + r] = 1.0;
        const auto& nrow = data->linear_cc->n_matrix[r];
        for (std::size_t j = 0; j < nrow.size(); ++j) jac.grad_h[j] = nrow[j];
        const auto& mrow = data->linear_cc->m_matrix[r];
        for (std::size_t j = 0; j < mrow.size(); ++j)
          jac.grad_h[x1_offset + j] = mrow[j];
        return jac;
      };
      pairs.push_back(std::move(pair));
    }
  }

  return from_general(std::move(objective), std::move(gradient), {},
                      inequalities, std::move(pairs), q.box());
}

}  // namespace mpcc
