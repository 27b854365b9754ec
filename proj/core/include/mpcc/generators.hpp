#ifndef MPCC_GENERATORS_HPP
#define MPCC_GENERATORS_HPP

#include <cstdint>
#include <utility>

#include "mpcc/model.hpp"

namespace mpcc {

/// Seeded bound-constrained quadratic MPCC family: n0 box variables and
/// p complementarity pairs, n = n0 + 2p variables total.
struct BoundQpccSpec {
  std::size_t n0 = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;
};

/// Draw an instance: Q symmetric indefinite with a filled diagonal and
/// about n^2/8 strictly-upper entries (n^2/4 off-diagonal nonzeros after
/// mirroring), standard normal values; g uniform on [-10, 10]; bounds
/// l0 uniform on [-10, 10] and u0 = l0 + uniform [0, 20]; pairs
/// (n0+i, n0+p+i).  Deterministic in the seed.  Pair-block rows are made
/// strictly diagonally dominant so the objective stays coercive over the
/// feasible slab (only the x0 block is box-bounded); the x0 block keeps
/// raw normal entries and carries the indefiniteness, certified by
/// opposite-sign sampled Rayleigh quotients and enforced by a diagonal
/// shift when the certificate fails.
QuadraticMpcc gen_bound_qpcc(const BoundQpccSpec& spec);

/// Extreme Rayleigh quotients of a symmetric matrix sampled over basis
/// vectors of the extreme diagonal entries, random unit vectors, and
/// power-iteration sequences for both spectrum ends.
std::pair<double, double> sampled_rayleigh_extremes(const TripletMatrix& q,
                                                    std::uint64_t seed);

/// Two-variable reference instance
///   minimize 0.5 (x1-1)^2 + (x2-1)^2  s.t.  0 <= x1 perp x2 >= 0,
/// with global minimizer (0, 1), value 0.5, and local minimizer (1, 0),
/// value 1.
MpccProblem kth3();

/// The same instance in quadratic form (constant term dropped, so the
/// objective is offset by -1.5 from the callback version).
QuadraticMpcc kth3_quadratic();

}  // namespace mpcc

#endif  // MPCC_GENERATORS_HPP
