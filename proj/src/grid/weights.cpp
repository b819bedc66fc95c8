#include <cmath>

#include "morrey/error.hpp"
#include "morrey/grid_function.hpp"
#include "morrey/point_set.hpp"

namespace morrey {

Weight::Weight(GridFunction w) : w_(std::move(w)) {
  bool positive = false;
  for (double v : w_.values()) {
    if (!std::isfinite(v) || v < 0.0) throw Error("weight values must be finite and nonnegative");
    positive = positive || v > 0.0;
  }
  if (!positive) throw Error("weight is identically zero");
}

Weight Weight::constant(const GridSpec& spec, double c) { return Weight(GridFunction(spec, c)); }

GridFunction weighted_power(const GridFunction& f, const Weight& w, double p) {
  require_same_grid(f.spec(), w.spec());
  GridFunction g(f.spec());
  for (std::size_t k = 0; k < g.size(); ++k) {
    double a = std::fabs(f[k]);
    g[k] = (p == 1.0 ? a : std::pow(a, p)) * w[k];
  }
  return g;
}

Weight sample_power_weight(double a, const Point& center, const GridSpec& spec) {
  if (center.dim() != spec.dim()) throw Error("dimension mismatch");
  GridFunction g(spec);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double r = distance(spec.cell_center(k), center);
    if (r == 0.0) throw Error("power weight singularity on a cell center");
    g[k] = a == 0.0 ? 1.0 : std::pow(r, a);
    if (!std::isfinite(g[k]) || !(g[k] > 0.0)) throw Error("power weight not finite and positive");
  }
  return Weight(std::move(g));
}

PointSet mask_points(const GridFunction& mask) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k] != 0.0) pts.push_back(mask.spec().cell_center(k));
  return PointSet(std::move(pts));
}

}  // namespace morrey
