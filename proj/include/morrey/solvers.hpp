#pragma once

#include <cstddef>

namespace morrey {

/// Parameters splitting a dyadic lattice into cubes near / far from Omega,
/// given a Whitney band (r1, r2) with 1 < r1 < r2:
///   mu = 2 (r2 + 1)/(alpha - 1) + 1 < min(3/2, r1),  r1 < alpha,
///   gamma = 2 (alpha + 1)/(r1 - 1) + 1  (so that Q is inside gamma R).
struct SplittingParams {
  double alpha = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
};

/// Deterministic rule alpha = 2 max(r1, 1 + 2 (r2 + 1)/(m - 1)), m = min(3/2, r1).
/// Throws Error when r1 <= 1 or r2 <= r1.
SplittingParams solve_splitting_params(double r1, double r2);

/// Pair (epsilon, N) with 2 sqrt(n) (1 + eps N) / (N (1 - eps sqrt(n))) = 1/nu.
struct EquaParams {
  double epsilon = 0.0;
  int big_n = 0;
};

/// N = ceil(4 sqrt(n) nu), eps = (N - 2 sqrt(n) nu) / (sqrt(n) (2 nu + 1) N).
EquaParams solve_epsilon_N(double nu, std::size_t n);

/// Left-hand side 2 sqrt(n) (1 + eps N) / (N (1 - eps sqrt(n))).
double equa_lhs(const EquaParams& params, std::size_t n);

}  // namespace morrey
