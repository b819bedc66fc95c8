#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "morrey/cube.hpp"

namespace morrey {

/// Finite set of distinct points of a common dimension. Holds both the
/// lacunary centers {x_j} and reference sets for Whitney-type families.
class PointSet {
 public:
  PointSet() = default;
  /// Throws Error on mixed dimensions or duplicate points.
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().dim(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Index of a point equal to x, if any.
  std::optional<std::size_t> find(const Point& x) const;

 private:
  std::vector<Point> points_;
};

/// dist(Q, S) = min over points of the exact point-to-cube distance.
/// Throws Error("empty reference set") when S is empty.
double distance(const Cube& q, const PointSet& s);

/// r1 diam Q <= dist(Q, S) <= r2 diam Q, compared on computed values.
bool whitney_member(const Cube& q, const PointSet& s, double r1, double r2);

struct RcondResult {
  bool holds = true;
  /// First pair (i, j), i < j, with max(|x_i|, |x_j|) > nu |x_i - x_j|.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  /// max over pairs of max(|x_i|,|x_j|) / |x_i - x_j|; 0 for fewer than 2 points.
  double worst_ratio = 0.0;
};

/// Checks max(|x_i|, |x_j|) <= nu |x_i - x_j| for all i != j. The comparison
/// allows `rel_tol` relative headroom: geometric sequences hit the inequality
/// with equality, and powers such as 1.5^-6 are not exactly representable.
RcondResult check_rcond(const PointSet& lambda, double nu, double rel_tol = 1e-12);

}  // namespace morrey
