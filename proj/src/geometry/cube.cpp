#include "morrey/cube.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "morrey/error.hpp"

namespace morrey {

Cube::Cube(Point center, double side) : center_(center), side_(side) {
  if (!(side > 0.0) || !std::isfinite(side)) throw Error("cube side must be positive");
  if (center.dim() == 0) throw Error("cube center has no coordinates");
}

Cube Cube::from_corner(const Point& lo, double side) {
  Point c(lo.dim());
  for (std::size_t i = 0; i < lo.dim(); ++i) c[i] = lo[i] + 0.5 * side;
  return Cube(c, side);
}

double Cube::diam() const { return std::sqrt(static_cast<double>(dim())) * side_; }

double Cube::volume() const { return std::pow(side_, static_cast<double>(dim())); }

Box Cube::box() const {
  Box b{Point(dim()), Point(dim())};
  for (std::size_t i = 0; i < dim(); ++i) {
    b.lo[i] = lo(i);
    b.hi[i] = hi(i);
  }
  return b;
}

Cube Cube::dilate(double t) const {
  if (!(t > 0.0)) throw Error("dilation factor must be positive");
  return Cube(center_, t * side_);
}

bool Cube::contains(const Point& x) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (x[i] < lo(i) || x[i] > hi(i)) return false;
  return true;
}

bool Cube::contains(const Cube& other) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (other.lo(i) < lo(i) || other.hi(i) > hi(i)) return false;
  return true;
}

std::array<Cube, 1u << kMaxDim> Cube::children() const {
  std::array<Cube, 1u << kMaxDim> out{};
  const double q = 0.25 * side_;
  for (std::size_t b = 0; b < child_count(); ++b) {
    Point c = center_;
    for (std::size_t i = 0; i < dim(); ++i) c[i] += (b >> i & 1u) ? q : -q;
    out[b] = Cube(c, 0.5 * side_);
  }
  return out;
}

bool operator<(const Cube& a, const Cube& b) {
  if (a.center_ < b.center_) return true;
  if (b.center_ < a.center_) return false;
  return a.side_ < b.side_;
}

double distance(const Cube& q, const Point& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const double gap = std::max({q.lo(i) - x[i], 0.0, x[i] - q.hi(i)});
    s += gap * gap;
  }
  return std::sqrt(s);
}

double distance(const Cube& q, const Box& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const double gap = std::max({q.lo(i) - b.hi[i], 0.0, b.lo[i] - q.hi(i)});
    s += gap * gap;
  }
  return std::sqrt(s);
}

}  // namespace morrey
