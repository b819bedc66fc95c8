#include "morrey/point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "morrey/error.hpp"

namespace morrey {

Point::Point(std::size_t dim, double fill) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw Error("dimension must be in [1, 3]");
  for (std::size_t i = 0; i < dim; ++i) c_[i] = fill;
}

Point::Point(std::initializer_list<double> coords) : dim_(coords.size()) {
  if (dim_ == 0 || dim_ > kMaxDim) throw Error("dimension must be in [1, 3]");
  std::copy(coords.begin(), coords.end(), c_.begin());
}

bool operator==(const Point& a, const Point& b) {
  return a.dim_ == b.dim_ && std::equal(a.begin(), a.end(), b.begin());
}

bool operator<(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string Point::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < dim_; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", c_[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

Point operator+(const Point& a, const Point& b) {
  Point r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  Point r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator*(double t, const Point& a) {
  Point r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = t * a[i];
  return r;
}

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(const Point& a, const Point& b) { return norm(a - b); }

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= std::max(0.0, extent(i));
  return v;
}

bool Box::empty() const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (!(hi[i] > lo[i])) return true;
  return false;
}

bool Box::contains(const Point& x) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

bool Box::contains(const Box& other) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (other.lo[i] < lo[i] || other.hi[i] > hi[i]) return false;
  return true;
}

Box intersect(const Box& a, const Box& b) {
  Box r{a.lo, a.hi};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.lo[i] = std::max(a.lo[i], b.lo[i]);
    r.hi[i] = std::min(a.hi[i], b.hi[i]);
  }
  return r;
}

}  // namespace morrey
