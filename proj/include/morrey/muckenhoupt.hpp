#pragma once

#include <string>
#include <utility>
#include <vector>

#include "morrey/norms.hpp"

namespace morrey {

struct ApReport {
  double value = 0.0;
  Cube argmax;
  std::size_t cubes_examined = 0;
  /// Per-cube terms, filled only when requested.
  std::vector<std::pair<Cube, double>> terms;
};

/// sup over enumerated Q of <w>_Q <w^(-1/(p-1))>_Q^(p-1), averages over the
/// full cube volume. Throws Error("dual weight undefined") when w vanishes on
/// a cell meeting some enumerated cube.
ApReport ap_constant(const Weight& w, double p, const CubeFamily& family, bool keep_terms = false);

/// w^(-1/(p-1)) cellwise; zero cells map to 0.
GridFunction dual_weight(const Weight& w, double p);

struct AxEstimate {
  /// Lower bound for the A_X constant of the space.
  double value = 0.0;
  Cube argmax;
  std::string argmax_label;
  std::size_t ratios_evaluated = 0;
  /// (f, Q) pairs with a zero denominator.
  std::size_t skipped = 0;
};

/// max over Q in `family` and f in `corpus` of
///   <|f|>_Q |chi_Q|_X / |f chi_Q|_X.
/// For a Morrey space the cubes come from its own family; for a Lebesgue
/// space `family` supplies them.
AxEstimate ax_constant_estimate(const NormSpec& space, const CubeFamily& family, const Corpus& corpus);

enum class ApMembership { InRange, Boundary, OutOfRange };

/// |x|^a is an A_p weight on R^n iff -n < a < n(p-1).
ApMembership classify_power_weight(double a, double p, int n);
std::string to_string(ApMembership m);

}  // namespace morrey
