#include "morrey/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "morrey/error.hpp"

namespace morrey {

SplittingParams solve_splitting_params(double r1, double r2) {
  if (!(r1 > 1.0)) throw Error("requires r1 > 1 (rescale the Whitney band by subdivision first)");
  if (!(r2 > r1)) throw Error("requires r2 > r1");
  const double m = std::min(1.5, r1);
  SplittingParams s;
  s.alpha = 2.0 * std::max(r1, 1.0 + 2.0 * (r2 + 1.0) / (m - 1.0));
  s.mu = 2.0 * (r2 + 1.0) / (s.alpha - 1.0) + 1.0;
  s.gamma = 2.0 * (s.alpha + 1.0) / (r1 - 1.0) + 1.0;
  return s;
}

EquaParams solve_epsilon_N(double nu, std::size_t n) {
  if (!(nu > 1.0)) throw Error("lacunary constant nu must exceed 1");
  if (n == 0) throw Error("dimension must be positive");
  const double rn = std::sqrt(static_cast<double>(n));
  EquaParams e;
  e.big_n = static_cast<int>(std::ceil(4.0 * rn * nu));
  const double bn = e.big_n;
  e.epsilon = (bn - 2.0 * rn * nu) / (rn * (2.0 * nu + 1.0) * bn);
  return e;
}

double equa_lhs(const EquaParams& params, std::size_t n) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double bn = params.big_n;
  return 2.0 * rn * (1.0 + params.epsilon * bn) / (bn * (1.0 - params.epsilon * rn));
}

}  // namespace morrey
