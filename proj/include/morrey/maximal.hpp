#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "morrey/norms.hpp"

namespace morrey {

/// Pointwise maximal values at cell centers, with a note on how they were made.
struct MaximalField {
  GridFunction values;
  std::string provenance;
};

/// Max over enumerated closed cubes Q containing each cell center of the
/// average of |f| over Q. Cells covered by no cube get 0. Throws Error on an
/// empty enumeration. All-cubes families aligned with the grid's own cells
/// take a sliding-window path that evaluates the same averages.
MaximalField maximal_exact(const GridFunction& f, const CubeFamily& cube_set);
/// The plain cube-by-cube loop, for any family.
MaximalField maximal_brute_force(const GridFunction& f, const CubeFamily& cube_set);

/// Max of the lattice-cube averages of |f| over the cubes containing each
/// cell center, optionally only over cubes passing `restriction`. One sweep
/// per level from the coarsest down.
MaximalField maximal_dyadic(const GridFunction& f, const DyadicLattice& lattice,
                            const std::optional<CubePredicate>& restriction = std::nullopt);

/// 3^n times the sum of the unrestricted dyadic maximal functions over the
/// 3^n shifted lattices. Throws Error unless exactly 3^n lattices are given.
MaximalField three_lattice_bound(const GridFunction& f, const std::vector<DyadicLattice>& lattices);

using MaximalOperator = std::function<GridFunction(const GridFunction&)>;

struct OperatorNormEstimate {
  /// max over the corpus of |op f| / |f|; a lower bound for the operator norm.
  double value = 0.0;
  std::string argmax_label;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

/// Throws Error when every corpus entry has zero norm.
OperatorNormEstimate operator_norm_estimate(const MaximalOperator& op, const NormSpec& space,
                                            const Corpus& corpus);

}  // namespace morrey
