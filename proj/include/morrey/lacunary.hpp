#pragma once

#include <cstddef>

#include "morrey/point_set.hpp"

namespace morrey {

/// Ratio gamma = nu / (nu - 1) of the geometric sequence attached to nu.
double lacunary_ratio(double nu);

/// {0} union {+-gamma^j : jmin <= j <= jmax} on the real line, sorted.
PointSet generate_lacunary_1d(double nu, int jmin, int jmax);

struct SpherePacking {
  PointSet points;
  /// Points placed on each sphere, indexed by j - jmin.
  std::vector<std::size_t> per_sphere;
  /// max over pairs of max(|x_i|,|x_j|)/|x_i - x_j|; the set satisfies the
  /// lacunary condition with this constant.
  double effective_nu = 0.0;
};

/// Origin plus, for each jmin <= j <= jmax, points on the sphere of radius
/// gamma^j with pairwise distances >= gamma^j / nu. Each sphere is filled by
/// greedy farthest-point insertion over a fixed candidate mesh of
/// `mesh_size` points, stopping once no candidate clears the separation.
/// `max_per_sphere` caps the count (0 = no cap).
SpherePacking generate_lacunary_sphere(double nu, std::size_t n, int jmin, int jmax,
                                       std::size_t max_per_sphere = 0,
                                       std::size_t mesh_size = 2048);

}  // namespace morrey
