#pragma once

#include "morrey/point.hpp"

namespace morrey {

/// Closed axis-aligned cube given by its center c_Q and side length l_Q.
/// Diameter and volume are derived on demand.
class Cube {
 public:
  Cube() = default;
  Cube(Point center, double side);

  /// Cube [lo, lo + side]^n.
  static Cube from_corner(const Point& lo, double side);

  const Point& center() const { return center_; }
  double side() const { return side_; }
  std::size_t dim() const { return center_.dim(); }

  double diam() const;
  double volume() const;
  double lo(std::size_t i) const { return center_[i] - 0.5 * side_; }
  double hi(std::size_t i) const { return center_[i] + 0.5 * side_; }
  Box box() const;

  /// Same center, side t * side.
  Cube dilate(double t) const;

  bool contains(const Point& x) const;
  bool contains(const Cube& other) const;

  /// Splits into the 2^n congruent children, ordered by binary index
  /// (bit i set means the upper half along axis i).
  std::array<Cube, 1u << kMaxDim> children() const;
  std::size_t child_count() const { return std::size_t{1} << dim(); }

  friend bool operator==(const Cube& a, const Cube& b) = default;
  /// Lexicographic by center, then side.
  friend bool operator<(const Cube& a, const Cube& b);

 private:
  Point center_;
  double side_ = 1.0;
};

/// Exact Euclidean distance from a point to a closed cube (coordinatewise clamp).
double distance(const Cube& q, const Point& x);

/// Distance between a cube and a closed box (0 when they meet).
double distance(const Cube& q, const Box& b);

}  // namespace morrey
