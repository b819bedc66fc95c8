#include "morrey/dyadic_lattice.hpp"

#include <bit>
#include <cmath>

#include "morrey/error.hpp"

namespace morrey {

DyadicLattice::DyadicLattice(Point origin, double base_side, std::array<int, kMaxDim> shift_thirds,
                             int min_level, int max_level)
    : origin_(origin),
      base_side_(base_side),
      shift_(shift_thirds),
      min_level_(min_level),
      max_level_(max_level) {
  if (!(base_side > 0.0)) throw Error("lattice base side must be positive");
  if (min_level > max_level) throw Error("lattice level range is empty");
  for (std::size_t i = 0; i < kMaxDim; ++i)
    if (shift_[i] < 0 || shift_[i] > 2) throw Error("lattice shift must be 0, 1 or 2 thirds");
}

double DyadicLattice::side(int level) const { return std::ldexp(base_side_, level); }

double DyadicLattice::offset(int level, std::size_t axis) const {
  const double s = side(level);
  const double sign = (level % 2 == 0) ? 1.0 : -1.0;
  return origin_[axis] + sign * (static_cast<double>(shift_[axis]) / 3.0) * s;
}

std::int64_t DyadicLattice::locate_axis(int level, std::size_t axis, double x) const {
  return static_cast<std::int64_t>(std::floor((x - offset(level, axis)) / side(level)));
}

LatticeCube DyadicLattice::locate(int level, const Point& x) const {
  LatticeCube c{level, {}};
  for (std::size_t i = 0; i < dim(); ++i) c.index[i] = locate_axis(level, i, x[i]);
  return c;
}

Cube DyadicLattice::cube(const LatticeCube& c) const {
  const double s = side(c.level);
  Point lo(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    lo[i] = offset(c.level, i) + static_cast<double>(c.index[i]) * s;
  return Cube::from_corner(lo, s);
}

std::vector<LatticeCube> DyadicLattice::children(const LatticeCube& c) const {
  std::vector<LatticeCube> out;
  if (c.level <= min_level_) return out;
  const Cube parent_cube = cube(c);
  for (const Cube& child : parent_cube.children()) {
    if (child.dim() == 0) break;
    out.push_back(locate(c.level - 1, child.center()));
    if (out.size() == parent_cube.child_count()) break;
  }
  return out;
}

LatticeCube DyadicLattice::parent(const LatticeCube& c) const {
  if (c.level >= max_level_) throw Error("top-level lattice cube has no parent");
  return locate(c.level + 1, cube(c).center());
}

bool DyadicLattice::is_ancestor(const LatticeCube& ancestor, const LatticeCube& c) const {
  LatticeCube cur = c;
  while (cur.level < ancestor.level) cur = parent(cur);
  return cur.level == ancestor.level && cur.index == ancestor.index;
}

std::pair<CellIndex, CellIndex> DyadicLattice::covering_range(int level, const Box& box) const {
  CellIndex first{}, last{};
  const double s = side(level);
  for (std::size_t i = 0; i < dim(); ++i) {
    const double off = offset(level, i);
    first[i] = static_cast<std::int64_t>(std::floor((box.lo[i] - off) / s));
    last[i] = static_cast<std::int64_t>(std::ceil((box.hi[i] - off) / s)) - 1;
    if (last[i] < first[i]) last[i] = first[i];
  }
  return {first, last};
}

std::vector<DyadicLattice> build_shifted_lattices(std::size_t n, const Point& corner,
                                                  std::size_t cells, double h) {
  if (n == 0 || n > kMaxDim || corner.dim() != n) throw Error("lattice dimension mismatch");
  if (cells == 0 || !std::has_single_bit(cells))
    throw Error("box side must be a power-of-two multiple of the resolution");
  if (!(h > 0.0)) throw Error("resolution must be positive");

  const int top = std::countr_zero(cells);
  Box box{corner, corner};
  for (std::size_t i = 0; i < n; ++i) box.hi[i] = corner[i] + static_cast<double>(cells) * h;

  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= 3;

  std::vector<std::array<int, kMaxDim>> shifts;
  for (std::size_t k = 0; k < count; ++k) {
    std::array<int, kMaxDim> t{};
    std::size_t rem = k;
    for (std::size_t i = n; i-- > 0;) {
      t[i] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    shifts.push_back(t);
  }

  // Lowest level at which every lattice holds the box inside one cube.
  int max_level = top;
  for (;; ++max_level) {
    bool all_single = true;
    for (const auto& t : shifts) {
      const DyadicLattice probe(corner, h, t, 0, max_level);
      const auto [first, last] = probe.covering_range(max_level, box);
      for (std::size_t i = 0; i < n; ++i) all_single = all_single && first[i] == last[i];
    }
    if (all_single) break;
    if (max_level > top + 8) throw Error("could not find a common top level for the lattices");
  }

  std::vector<DyadicLattice> out;
  out.reserve(count);
  for (const auto& t : shifts) out.emplace_back(corner, h, t, 0, max_level);
  return out;
}

std::optional<Containment> smallest_containing(const std::vector<DyadicLattice>& lattices,
                                               const Cube& q) {
  std::optional<Containment> best;
  for (std::size_t j = 0; j < lattices.size(); ++j) {
    const DyadicLattice& lat = lattices[j];
    for (int m = lat.min_level(); m <= lat.max_level(); ++m) {
      if (lat.side(m) < q.side()) continue;
      const LatticeCube c = lat.locate(m, q.center());
      if (!lat.cube(c).contains(q)) continue;
      const double ratio = lat.side(m) / q.side();
      if (!best || ratio < best->side_ratio) best = Containment{j, c, ratio};
      break;
    }
  }
  return best;
}

}  // namespace morrey
