#pragma once

// Brute-force reference implementations used to pin the fast paths.

#include <algorithm>
#include <cmath>
#include <vector>

#include "morrey/cube_family.hpp"
#include "morrey/grid_function.hpp"
#include "morrey/rng.hpp"

namespace oracle {

using namespace morrey;

// Sum over cells of value * |cell cap b|, cell by cell.
inline long double naive_integral(const GridFunction& f, const Box& b) {
  const GridSpec& g = f.spec();
  long double acc = 0.0L;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Cube c = g.cell_cube(k);
    long double vol = 1.0L;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      long double lo = std::max<long double>(c.lo(i), b.lo[i]);
      long double hi = std::min<long double>(c.hi(i), b.hi[i]);
      vol *= std::max<long double>(0.0L, hi - lo);
    }
    acc += vol * f[k];
  }
  return acc;
}

inline long double naive_integral(const GridFunction& f, const Cube& q) { return naive_integral(f, q.box()); }

inline GridFunction random_field(const GridSpec& g, Rng& rng, double lo = -1.0, double hi = 1.0) {
  GridFunction f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = rng.uniform(lo, hi);
  return f;
}

inline Weight random_weight(const GridSpec& g, Rng& rng, double lo = 0.1, double hi = 4.0) {
  return Weight(random_field(g, rng, lo, hi));
}

// Random cube with corners anywhere in the grid box (possibly leaving it).
inline Cube random_cube(const GridSpec& g, Rng& rng) {
  const Box b = g.box();
  double ext = b.extent(0);
  for (std::size_t i = 1; i < g.dim(); ++i) ext = std::min(ext, b.extent(i));
  const double side = rng.uniform(0.01, 1.0) * ext;
  Point c(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) c[i] = rng.uniform(b.lo[i], b.hi[i]);
  return Cube(c, side);
}

// Every grid-aligned cube of the grid box, by brute force over corners and sides.
inline std::vector<Cube> all_grid_cubes(const GridSpec& g) {
  std::vector<Cube> out;
  const std::size_t n = g.dim();
  std::size_t m_max = g.cells(0);
  for (std::size_t i = 1; i < n; ++i) m_max = std::min(m_max, g.cells(i));
  for (std::size_t m = 1; m <= m_max; ++m) {
    std::array<std::size_t, kMaxDim> idx{};
    while (true) {
      Point lo(n);
      for (std::size_t i = 0; i < n; ++i) lo[i] = g.corner()[i] + static_cast<double>(idx[i]) * g.step();
      out.push_back(Cube::from_corner(lo, static_cast<double>(m) * g.step()));
      std::size_t i = n;
      while (i-- > 0) {
        if (idx[i] + m < g.cells(i)) {
          ++idx[i];
          break;
        }
        idx[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::fabs(want), 1e-300);
  return std::fabs(got - want) / scale;
}

}  // namespace oracle
