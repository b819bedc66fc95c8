#include "morrey/annulus.hpp"

#include <algorithm>
#include <cmath>

#include "morrey/error.hpp"

namespace morrey {

std::size_t annulus_cover_count(std::size_t n, int big_n) {
  if (big_n < 1) throw Error("annulus cover needs N >= 1");
  std::size_t outer = 1, inner = 1;
  const auto nn = static_cast<std::size_t>(big_n);
  for (std::size_t i = 0; i < n; ++i) {
    outer *= nn + 1;
    inner *= nn;
  }
  return (std::size_t{1} << n) * (outer - inner);
}

std::vector<Cube> annulus_cover(const Cube& p, int big_n) {
  if (big_n < 1) throw Error("annulus cover needs N >= 1");
  const std::size_t n = p.dim();
  const double s = p.side() / (2.0 * big_n);
  const std::size_t per_axis = 2 * static_cast<std::size_t>(big_n) + 2;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_axis;

  std::vector<Cube> out;
  out.reserve(annulus_cover_count(n, big_n));
  for (std::size_t flat = 0; flat < total; ++flat) {
    Point lo(n);
    bool boundary = false;
    std::size_t rem = flat;
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t k = rem % per_axis;
      rem /= per_axis;
      boundary = boundary || k == 0 || k + 1 == per_axis;
      const double offset = static_cast<double>(static_cast<long>(k) - (big_n + 1));
      lo[i] = p.center()[i] + offset * s;
    }
    if (boundary) out.push_back(Cube::from_corner(lo, s));
  }
  return out;
}

bool annulus_distance_bounds(const Cube& l, const Point& center, int big_n, double rel_tol) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < l.dim(); ++i) {
    const double gap = std::max({l.lo(i) - center[i], 0.0, center[i] - l.hi(i)});
    d2 += gap * gap;
  }
  const double nl = big_n * l.side();
  const double lower = nl * nl;
  const double upper = lower * static_cast<double>(l.dim());
  return d2 >= lower * (1.0 - rel_tol) && d2 <= upper * (1.0 + rel_tol);
}

}  // namespace morrey
