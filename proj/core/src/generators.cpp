#include "mpcc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mpcc/rng.hpp"

namespace mpcc {

namespace {

double rayleigh(const TripletMatrix& q, const std::vector<double>& v) {
  std::vector<double> qv;
  q.symmetric_matvec(v, qv);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    num += v[j] * qv[j];
    den += v[j] * v[j];
  }
  return den > 0.0 ? num / den : 0.0;
}

std::vector<double> random_unit(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double nrm = 0.0;
  for (double& t : v) {
    t = rng.normal();
    nrm += t * t;
  }
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) {
    v[0] = 1.0;
    return v;
  }
  for (double& t : v) t /= nrm;
  return v;
}

// power iteration on Q - shift*I, tracking the Rayleigh quotient of Q
double power_extreme(const TripletMatrix& q, Rng& rng, double shift,
                     std::vector<double>& scratch) {
  std::vector<double> v = random_unit(rng, q.n);
  double quotient = rayleigh(q, v);
  for (int it = 0; it < 30; ++it) {
    q.symmetric_matvec(v, scratch);
    double nrm = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      scratch[j] -= shift * v[j];
      nrm += scratch[j] * scratch[j];
    }
    nrm = std::sqrt(nrm);
    if (nrm < 1e-300) break;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = scratch[j] / nrm;
    quotient = rayleigh(q, v);
  }
  return quotient;
}

}  // namespace

std::pair<double, double> sampled_rayleigh_extremes(const TripletMatrix& q,
                                                    std::uint64_t seed) {
  if (q.n == 0) return {0.0, 0.0};
  Rng rng(seed);

  std::vector<double> diag(q.n, 0.0);
  for (std::size_t k = 0; k < q.nnz(); ++k)
    if (q.row[k] == q.col[k]) diag[q.row[k]] += q.value[k];

  double lo = diag[0], hi = diag[0];
  for (double d : diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }

  std::vector<double> scratch(q.n);
  for (int s = 0; s < 8; ++s) {
    const double r = rayleigh(q, random_unit(rng, q.n));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  // dominant end first, then deflate toward the opposite end
  const double dom = power_extreme(q, rng, 0.0, scratch);
  lo = std::min(lo, dom);
  hi = std::max(hi, dom);
  const double other = power_extreme(q, rng, dom, scratch);
  lo = std::min(lo, other);
  hi = std::max(hi, other);
  return {lo, hi};
}

QuadraticMpcc gen_bound_qpcc(const BoundQpccSpec& spec) {
  if (spec.n0 == 0)
    throw std::invalid_argument("bound QPCC spec needs n0 >= 1");
  const std::size_t n0 = spec.n0, p = spec.p;  // p == 0 gives a plain box QP
  const std::size_t n = n0 + 2 * p;

  Rng rng(spec.seed);
  QuadraticMpcc q;
  q.n0 = n0;
  q.seed = spec.seed;
  q.name = "bound_qpcc_n0" + std::to_string(n0) + "_p" + std::to_string(p) +
           "_s" + std::to_string(spec.seed);
  q.q_matrix.n = n;

  // diagonal always filled; pair-block entries are revisited below
  for (std::size_t i = 0; i < n; ++i) q.q_matrix.add(i, i, rng.normal());

  // strictly-upper pattern: select round(n^2/8) of the n(n-1)/2 slots by
  // sequential selection sampling, mirrored implicitly by the storage
  const std::size_t slots = n * (n - 1) / 2;
  std::size_t want = std::min<std::size_t>(
      static_cast<std::size_t>(std::llround(double(n) * double(n) / 8.0)),
      slots);
  std::size_t left = slots;
  for (std::size_t i = 0; i < n && want > 0; ++i) {
    for (std::size_t j = i + 1; j < n && want > 0; ++j, --left) {
      if (rng.uniform01() * static_cast<double>(left) <
          static_cast<double>(want)) {
        q.q_matrix.add(i, j, rng.normal());
        --want;
      }
    }
  }

  // The box only bounds the x0 block, so directions supported on the
  // pair block are the unbounded ones.  Making those rows strictly
  // diagonally dominant keeps the objective coercive over the feasible
  // slab (level sets stay compact); the x0 block remains free-form and
  // carries the indefiniteness.
  {
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t k = 0; k < q.q_matrix.nnz(); ++k) {
      const std::size_t i = q.q_matrix.row[k], j = q.q_matrix.col[k];
      if (i == j || i < n0 || j < n0) continue;
      row_sum[i] += std::abs(q.q_matrix.value[k]);
      row_sum[j] += std::abs(q.q_matrix.value[k]);
    }
    for (std::size_t k = 0; k < q.q_matrix.nnz(); ++k) {
      const std::size_t i = q.q_matrix.row[k];
      if (i != q.q_matrix.col[k] || i < n0) continue;
      q.q_matrix.value[k] = row_sum[i] + std::abs(q.q_matrix.value[k]) + 0.1;
    }
  }

  q.g.resize(n);
  for (double& t : q.g) t = rng.uniform(-10.0, 10.0);

  q.l0.resize(n0);
  q.u0.resize(n0);
  for (std::size_t j = 0; j < n0; ++j) {
    q.l0[j] = rng.uniform(-10.0, 10.0);
    q.u0[j] = q.l0[j] + rng.uniform(0.0, 20.0);
  }

  for (std::size_t i = 0; i < p; ++i) q.cc_pairs.emplace_back(n0 + i, n0 + p + i);

  // indefiniteness: require opposite-sign Rayleigh samples, otherwise
  // push two diagonal entries apart.  Entry 0 lives in the x0 block and
  // takes the negative shift; the positive shift only ever strengthens
  // the dominance above.
  auto [lo, hi] = sampled_rayleigh_extremes(q.q_matrix, spec.seed ^ 0x9e3779b97f4a7c15ull);
  if (!(lo < 0.0 && hi > 0.0)) {
    double max_diag = 0.0;
    for (std::size_t k = 0; k < q.q_matrix.nnz(); ++k)
      if (q.q_matrix.row[k] == q.q_matrix.col[k])
        max_diag = std::max(max_diag, std::abs(q.q_matrix.value[k]));
    const double shift = 1.0 + max_diag;
    for (std::size_t k = 0; k < q.q_matrix.nnz(); ++k) {
      if (q.q_matrix.row[k] != q.q_matrix.col[k]) continue;
      if (q.q_matrix.row[k] == 0) q.q_matrix.value[k] -= shift;
      if (q.q_matrix.row[k] == 1) q.q_matrix.value[k] += shift;
    }
  }

  q.validate();
  return q;
}

MpccProblem kth3() {
  MpccProblem prob;
  prob.dim = 2;
  prob.objective = [](std::span<const double> x) {
    return 0.5 * (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 1.0) * (x[1] - 1.0);
  };
  prob.gradient = [](std::span<const double> x) {
    return std::vector<double>{x[0] - 1.0, 2.0 * (x[1] - 1.0)};
  };
  CcPair pair;
  pair.eval = [](std::span<const double> x) { return Point2{x[0], x[1]}; };
  pair.jacobian = [](std::span<const double>) {
    return CcJacobian{{1.0, 0.0}, {0.0, 1.0}};
  };
  prob.ccs.push_back(std::move(pair));
  prob.box = BoxSet::unbounded(2);
  return prob;
}

QuadraticMpcc kth3_quadratic() {
  QuadraticMpcc q;
  q.n0 = 0;
  q.name = "kth3";
  q.q_matrix.n = 2;
  q.q_matrix.add(0, 0, 1.0);
  q.q_matrix.add(1, 1, 2.0);
  q.g = {-1.0, -2.0};
  q.cc_pairs.emplace_back(0, 1);
  q.validate();
  return q;
}

}  // namespace mpcc
