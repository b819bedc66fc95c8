#include "morrey/point_set.hpp"

#include <algorithm>
#include <limits>

#include "morrey/error.hpp"

namespace morrey {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != points_.front().dim()) throw Error("point set mixes dimensions");
    for (std::size_t j = 0; j < i; ++j)
      if (points_[i] == points_[j]) throw Error("point set contains duplicate points");
  }
}

std::optional<std::size_t> PointSet::find(const Point& x) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == x) return i;
  return std::nullopt;
}

double distance(const Cube& q, const PointSet& s) {
  if (s.empty()) throw Error("empty reference set");
  double best = std::numeric_limits<double>::infinity();
  for (const Point& x : s) best = std::min(best, distance(q, x));
  return best;
}

bool whitney_member(const Cube& q, const PointSet& s, double r1, double r2) {
  const double d = distance(q, s);
  const double diam = q.diam();
  return r1 * diam <= d && d <= r2 * diam;
}

RcondResult check_rcond(const PointSet& lambda, double nu, double rel_tol) {
  if (!(nu > 1.0)) throw Error("lacunary constant nu must exceed 1");
  RcondResult r;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      const double big = std::max(norm(lambda[i]), norm(lambda[j]));
      const double gap = distance(lambda[i], lambda[j]);
      r.worst_ratio = std::max(r.worst_ratio, big / gap);
      if (big > nu * gap * (1.0 + rel_tol) && r.holds) {
        r.holds = false;
        r.violation = std::make_pair(i, j);
      }
    }
  }
  return r;
}

}  // namespace morrey
