#include "morrey/lacunary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "morrey/error.hpp"

namespace morrey {

double lacunary_ratio(double nu) {
  if (!(nu > 1.0)) throw Error("lacunary constant nu must exceed 1");
  return nu / (nu - 1.0);
}

PointSet generate_lacunary_1d(double nu, int jmin, int jmax) {
  if (jmin > jmax) throw Error("jmin must not exceed jmax");
  const double gamma = lacunary_ratio(nu);
  std::vector<Point> pts{Point{0.0}};
  for (int j = jmin; j <= jmax; ++j) {
    const double r = std::pow(gamma, j);
    pts.push_back(Point{r});
    pts.push_back(Point{-r});
  }
  std::sort(pts.begin(), pts.end());
  return PointSet(std::move(pts));
}

namespace {

// Fixed candidate directions on the unit sphere S^{n-1}.
std::vector<Point> sphere_mesh(std::size_t n, std::size_t m) {
  std::vector<Point> mesh;
  mesh.reserve(m);
  if (n == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
      mesh.push_back(Point{std::cos(t), std::sin(t)});
    }
  } else {
    // Fibonacci lattice; k = 0 is the north pole.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < m; ++k) {
      const double z = 1.0 - 2.0 * static_cast<double>(k) / static_cast<double>(m - 1);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = golden * static_cast<double>(k);
      mesh.push_back(Point{rho * std::cos(t), rho * std::sin(t), z});
    }
  }
  return mesh;
}

}  // namespace

SpherePacking generate_lacunary_sphere(double nu, std::size_t n, int jmin, int jmax,
                                       std::size_t max_per_sphere, std::size_t mesh_size) {
  if (n < 2 || n > kMaxDim) throw Error("sphere generator needs 2 <= n <= 3");
  if (jmin > jmax) throw Error("jmin must not exceed jmax");
  if (mesh_size < 2) throw Error("sphere mesh needs at least 2 candidates");
  const double gamma = lacunary_ratio(nu);
  const std::vector<Point> mesh = sphere_mesh(n, mesh_size);

  SpherePacking out;
  std::vector<Point> all{Point(n, 0.0)};
  for (int j = jmin; j <= jmax; ++j) {
    const double radius = std::pow(gamma, j);
    const double separation = radius / nu;
    std::vector<Point> cand;
    cand.reserve(mesh.size());
    for (const Point& u : mesh) cand.push_back(radius * u);

    std::vector<double> gap(cand.size(), std::numeric_limits<double>::infinity());
    std::vector<Point> chosen;
    std::size_t next = 0;
    while (true) {
      chosen.push_back(cand[next]);
      if (max_per_sphere != 0 && chosen.size() >= max_per_sphere) break;
      const Point last = cand[next];
      double best = -1.0;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        gap[k] = std::min(gap[k], distance(cand[k], last));
        if (gap[k] > best) {
          best = gap[k];
          next = k;
        }
      }
      if (best < separation) break;
    }
    out.per_sphere.push_back(chosen.size());
    all.insert(all.end(), chosen.begin(), chosen.end());
  }
  out.points = PointSet(std::move(all));
  out.effective_nu = check_rcond(out.points, std::numeric_limits<double>::max()).worst_ratio;
  return out;
}

}  // namespace morrey
