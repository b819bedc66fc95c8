#pragma once

#include <cstdint>
#include <optional>

#include "morrey/lab/catalog.hpp"
#include "morrey/lab/report.hpp"
#include "morrey/solvers.hpp"

namespace morrey::lab {

/// Whitney-band equivalence.
/// (a) ||f||_{W(r1,r2)} <= 2^{n(1-lambda)/p} ||f||_{W(2r1,2(r2+1))}, checked
///     per cube against its 2^n children and at norm level. The fine family
///     uses step h/2 so that children are grid-aligned members.
/// (b) Every Q in W(alpha1,alpha2) is dilated about its center to a cube
///     Qt in W(r1,r2) with term(Q) <= (alpha2/r1)^{lambda n/p} term(Qt).
///     alpha1 = 2^k r1 > max(1, r1) and alpha2 is r2 pushed k times through
///     r -> 2(r+1).
/// Throws Error when a family is empty.
Report verify_eqst(const GridFunction& f, const Weight& w, const MorreyParams& params,
                   const PointSet& omega, double r1, double r2);

/// Nested annuli g^k Q \ g^{k+1} Q, g = N/(N+1), covered by annulus_cover down
/// to grid scale. Throws Error naming the limiting scale when the first
/// cover is already finer than the grid.
Report verify_redw(const Cube& q, int big_n, const GridFunction& f, const Weight& w,
                   const MorreyParams& params);

/// dist(R, Lambda) == dist(R, x_j) for random R inside the cube centered at
/// x_j with diameter |x_j| / nu.
Report verify_key_property(const PointSet& lambda, double nu, std::size_t samples, std::uint64_t seed);

struct ConnectSetup {
  FieldSampler f;
  FieldSampler w;
  GridSpec base;
  std::size_t levels = 3;
  MorreyParams params;
  PointSet lambda;
  double nu = 2.0;
  /// Defaults to solve_epsilon_N(nu, n).
  std::optional<EquaParams> equa;
};

/// Centered family F over Lambda against W(eps N/sqrt n, N) and
/// W(N/sqrt n, N): the enclosing-cube bound ||f||_W <= D ||f||_F with a
/// measured D, and the ratio ||f||_F / ||f||_W over grid refinements.
Report verify_connect(const ConnectSetup& setup);

}  // namespace morrey::lab
