#pragma once

#include <cstddef>
#include <vector>

#include "morrey/cube.hpp"

namespace morrey {

/// Number of cubes covering the annulus (1+1/N)P \ P: 2^n ((N+1)^n - N^n).
std::size_t annulus_cover_count(std::size_t n, int big_n);

/// Covers the cubic annulus (1 + 1/N)P \ P by congruent cubes of side
/// l_P / (2N) with disjoint interiors: (1 + 1/N)P is tiled by a (2N+2)^n grid
/// whose inner (2N)^n block is exactly P, and the outer layer is returned.
/// Order: lexicographic grid position, axis 0 slowest.
std::vector<Cube> annulus_cover(const Cube& p, int big_n);

/// (N / sqrt n) diam L <= dist(L, c_P) <= N diam L, i.e. N l_L <= dist <= N sqrt(n) l_L.
/// Compared on squared distances with `rel_tol` relative headroom.
bool annulus_distance_bounds(const Cube& l, const Point& center, int big_n,
                             double rel_tol = 0.0);

}  // namespace morrey
