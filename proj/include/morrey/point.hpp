#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>

namespace morrey {

/// Largest ambient dimension supported at runtime.
inline constexpr std::size_t kMaxDim = 3;

/// Coordinate vector in R^n, 1 <= n <= kMaxDim, stored inline.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  const double* begin() const { return c_.data(); }
  const double* end() const { return c_.data() + dim_; }

  friend bool operator==(const Point& a, const Point& b);
  /// Lexicographic order; used for deterministic tie-breaks.
  friend bool operator<(const Point& a, const Point& b);

  std::string to_string() const;

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double t, const Point& a);

/// Euclidean norm |x|.
double norm(const Point& x);
double distance(const Point& a, const Point& b);

/// Axis-aligned closed box [lo, hi].
struct Box {
  Point lo;
  Point hi;

  std::size_t dim() const { return lo.dim(); }
  double extent(std::size_t i) const { return hi[i] - lo[i]; }
  double volume() const;
  bool empty() const;
  bool contains(const Point& x) const;
  bool contains(const Box& other) const;
};

/// Intersection; may be empty (check Box::empty()).
Box intersect(const Box& a, const Box& b);

}  // namespace morrey
