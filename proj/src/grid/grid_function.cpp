#include "morrey/grid_function.hpp"

#include <cmath>

#include "morrey/error.hpp"

namespace morrey {

GridSpec::GridSpec(Point corner, std::array<std::size_t, kMaxDim> cells, double h)
    : corner_(std::move(corner)), cells_(cells), h_(h) {
  if (corner_.dim() == 0) throw Error("grid dimension must be in [1, 3]");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("grid step must be positive and finite");
  for (std::size_t i = 0; i < kMaxDim; ++i) {
    if (i >= dim()) cells_[i] = 1;
    else if (cells_[i] == 0) throw Error("grid needs at least one cell per axis");
  }
}

GridSpec GridSpec::cubic(const Point& corner, std::size_t cells, double h) {
  return GridSpec(corner, {cells, cells, cells}, h);
}

GridSpec GridSpec::centered(std::size_t n, double half_extent, std::size_t cells) {
  if (!(half_extent > 0.0)) throw Error("half extent must be positive");
  if (cells == 0) throw Error("grid needs at least one cell per axis");
  return cubic(Point(n, -half_extent), cells, 2.0 * half_extent / static_cast<double>(cells));
}

std::size_t GridSpec::cell_count() const {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim(); ++i) total *= cells_[i];
  return total;
}

Box GridSpec::box() const {
  Point hi = corner_;
  for (std::size_t i = 0; i < dim(); ++i) hi[i] = corner_[i] + extent(i);
  return {corner_, hi};
}

double GridSpec::cell_volume() const { return std::pow(h_, static_cast<double>(dim())); }

std::size_t GridSpec::flat(const std::array<std::size_t, kMaxDim>& idx) const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim(); ++i) k = k * cells_[i] + idx[i];
  return k;
}

std::array<std::size_t, kMaxDim> GridSpec::unflat(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> idx{};
  for (std::size_t i = dim(); i-- > 0;) {
    idx[i] = flat % cells_[i];
    flat /= cells_[i];
  }
  return idx;
}

Point GridSpec::cell_center(std::size_t flat) const {
  auto idx = unflat(flat);
  Point c = corner_;
  for (std::size_t i = 0; i < dim(); ++i) c[i] = corner_[i] + (static_cast<double>(idx[i]) + 0.5) * h_;
  return c;
}

Cube GridSpec::cell_cube(std::size_t flat) const { return Cube(cell_center(flat), h_); }

GridSpec GridSpec::refined(std::size_t factor) const {
  if (factor == 0) throw Error("refinement factor must be positive");
  auto c = cells_;
  for (std::size_t i = 0; i < dim(); ++i) c[i] *= factor;
  return GridSpec(corner_, c, h_ / static_cast<double>(factor));
}

GridFunction::GridFunction(GridSpec spec, double fill)
    : spec_(std::move(spec)), values_(spec_.cell_count(), fill) {}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.cell_count()) throw Error("value count does not match grid");
}

GridFunction GridFunction::abs() const {
  GridFunction g = *this;
  for (double& v : g.values_) v = std::fabs(v);
  return g;
}

GridFunction GridFunction::scaled(double c) const {
  GridFunction g = *this;
  for (double& v : g.values_) v *= c;
  return g;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.spec(), b.spec());
  GridFunction g = a;
  for (std::size_t k = 0; k < g.size(); ++k) g.values_[k] += b.values_[k];
  return g;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw Error("grid mismatch");
}

}  // namespace morrey
