#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "morrey/dyadic_lattice.hpp"
#include "morrey/point_set.hpp"

namespace morrey {

// Restriction predicates for dyadic families. NearSet/FarSet are the two
// halves of the split dist(R, Omega) <= alpha diam R versus > alpha diam R.
struct AnyCube {};
struct NearSet {
  PointSet omega;
  double alpha = 1.0;
};
struct FarSet {
  PointSet omega;
  double alpha = 1.0;
};
struct WhitneyBand {
  PointSet omega;
  double r1 = 0.0;
  double r2 = 0.0;
};
/// In-code predicate; not serializable.
struct CustomPredicate {
  std::string label;
  std::function<bool(const Cube&)> test;
};
using CubePredicate = std::variant<AnyCube, NearSet, FarSet, WhitneyBand, CustomPredicate>;

bool evaluate(const CubePredicate& pred, const Cube& q);
std::string describe(const CubePredicate& pred);

/// Truncation policy shared by all family kinds.
///  - window: grid-aligned kinds enumerate cubes inside it; centered kinds keep
///    centers inside it; dyadic kinds keep cubes meeting its interior.
///  - step: alignment step of grid-aligned kinds (corners on window.lo + Z*step,
///    sides in step*N).
///  - [min_side, max_side]: admissible side lengths.
struct Truncation {
  Box window;
  double step = 1.0;
  double min_side = 0.0;
  double max_side = std::numeric_limits<double>::infinity();
};

/// Every grid-aligned cube.
struct AllCubes {};
/// Cubes centered at the given points, sides on the geometric ladder
/// min_side * 2^(k / rungs_per_octave), k = 0, 1, ..., up to max_side.
struct CenteredAt {
  PointSet centers;
  int rungs_per_octave = 2;
};
/// Grid-aligned cubes with r1 diam Q <= dist(Q, Omega) <= r2 diam Q.
struct Whitney {
  PointSet omega;
  double r1 = 0.0;
  double r2 = 0.0;
};
/// Cubes of a dyadic lattice passing a restriction predicate.
struct DyadicRestricted {
  DyadicLattice lattice;
  CubePredicate predicate;
};
using FamilyKind = std::variant<AllCubes, CenteredAt, Whitney, DyadicRestricted>;

using CubeVisitor = std::function<void(const Cube&)>;

/// Enumeration layout of the grid-aligned kinds: the window holds cells[i]
/// steps per axis and sides run over m * step for m in [m_first, m_last].
struct AlignedLayout {
  std::array<std::size_t, kMaxDim> cells{1, 1, 1};
  std::size_t m_first = 1;
  std::size_t m_last = 0;
};

/// Predicate-defined cube family with a deterministic finite enumeration.
class CubeFamily {
 public:
  CubeFamily(FamilyKind kind, Truncation truncation);

  static CubeFamily all_cubes(const Box& window, double step, double min_side = 0.0,
                              double max_side = std::numeric_limits<double>::infinity());
  static CubeFamily centered_at(PointSet centers, const Box& window, double min_side,
                                double max_side, int rungs_per_octave = 2);
  static CubeFamily whitney(PointSet omega, double r1, double r2, const Box& window, double step,
                            double min_side = 0.0,
                            double max_side = std::numeric_limits<double>::infinity());
  static CubeFamily dyadic(DyadicLattice lattice, CubePredicate predicate, const Box& window);

  const FamilyKind& kind() const { return kind_; }
  const Truncation& truncation() const { return truncation_; }
  std::size_t dim() const { return truncation_.window.dim(); }
  std::string kind_name() const;

  /// Membership predicate of the kind alone (ignores truncation).
  bool satisfies_kind(const Cube& q) const;

  /// Visits cubes in a fixed order: grid-aligned kinds by side then corner
  /// (axis 0 slowest); centered kinds by center then side; dyadic kinds from
  /// the coarsest level down.
  void for_each(const CubeVisitor& visit) const;
  std::vector<Cube> enumerate() const;
  std::size_t count() const;

  /// Throws Error for kinds that are not grid-aligned.
  AlignedLayout aligned_layout() const;
  /// Cube with lower corner window.lo + corner * step and side m * step.
  Cube aligned_cube(const std::array<std::size_t, kMaxDim>& corner, std::size_t m) const;

 private:
  void for_each_aligned(const CubeVisitor& visit, const std::function<bool(const Cube&)>& keep) const;

  FamilyKind kind_;
  Truncation truncation_;
};

/// k-th rung min_side * 2^(k / rungs) of the centered-family side ladder;
/// whole octaves are exact powers of two.
double ladder_side(double min_side, int rungs, int k);

/// Smallest rung >= side, as its index k.
int ladder_rung_at_least(double min_side, int rungs, double side);

}  // namespace morrey
