#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "morrey/cube.hpp"

namespace morrey {

using CellIndex = std::array<std::int64_t, kMaxDim>;

/// A lattice cube addressed by its level and integer position.
struct LatticeCube {
  int level = 0;
  CellIndex index{};
};

/// Shifted dyadic cube system. Cubes at level m have side base * 2^m and
/// lower corners at origin + (-1)^m (t/3) * side + k * side with
/// t in {0, 1, 2} per axis. The alternating sign keeps consecutive levels
/// nested, so each level refines the next coarser one. Cubes are half-open
/// for point location; geometric predicates treat them as closed.
class DyadicLattice {
 public:
  DyadicLattice(Point origin, double base_side, std::array<int, kMaxDim> shift_thirds,
                int min_level, int max_level);

  std::size_t dim() const { return origin_.dim(); }
  const Point& origin() const { return origin_; }
  double base_side() const { return base_side_; }
  const std::array<int, kMaxDim>& shift_thirds() const { return shift_; }
  int min_level() const { return min_level_; }
  int max_level() const { return max_level_; }
  int level_count() const { return max_level_ - min_level_ + 1; }

  double side(int level) const;
  /// Lower corner of cube index 0 along `axis` at `level`.
  double offset(int level, std::size_t axis) const;

  Cube cube(const LatticeCube& c) const;
  /// Lattice cube at `level` whose half-open cell contains x.
  LatticeCube locate(int level, const Point& x) const;
  std::int64_t locate_axis(int level, std::size_t axis, double x) const;

  /// Children one level down (empty at min_level), ordered by binary index.
  std::vector<LatticeCube> children(const LatticeCube& c) const;
  /// Parent one level up; precondition: c.level < max_level.
  LatticeCube parent(const LatticeCube& c) const;
  bool is_ancestor(const LatticeCube& ancestor, const LatticeCube& c) const;

  /// Index ranges [first, last] per axis of level cubes meeting the open box.
  std::pair<CellIndex, CellIndex> covering_range(int level, const Box& box) const;

 private:
  Point origin_;
  double base_side_;
  std::array<int, kMaxDim> shift_{};
  int min_level_;
  int max_level_;
};

/// The 3^n lattices with shift vectors t in {0,1,2}^n (lexicographic, so
/// index 0 is the unshifted lattice), all built over the cubic box
/// [corner, corner + cells*h]^n. `cells` must be a power of two. Levels run
/// from the cell scale up to the first level at which every lattice holds the
/// whole box inside a single cube.
std::vector<DyadicLattice> build_shifted_lattices(std::size_t n, const Point& corner,
                                                  std::size_t cells, double h);

/// Smallest lattice cube (over all lattices and levels) containing the closed
/// cube q; returns the lattice index and cube, or nullopt if none exists in
/// range.
struct Containment {
  std::size_t lattice = 0;
  LatticeCube cube;
  double side_ratio = 0.0;
};
std::optional<Containment> smallest_containing(const std::vector<DyadicLattice>& lattices,
                                               const Cube& q);

}  // namespace morrey
