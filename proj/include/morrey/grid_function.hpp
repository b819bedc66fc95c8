#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "morrey/cube.hpp"
#include "morrey/point_set.hpp"

namespace morrey {

/// Uniform cell grid over the box [corner, corner + cells * h].
class GridSpec {
 public:
  GridSpec() = default;
  GridSpec(Point corner, std::array<std::size_t, kMaxDim> cells, double h);
  /// Cubic grid with the same cell count on every axis.
  static GridSpec cubic(const Point& corner, std::size_t cells, double h);
  /// [-half_extent, half_extent]^n split into `cells` per axis. With an even
  /// count the origin is a grid node, never a cell center.
  static GridSpec centered(std::size_t n, double half_extent, std::size_t cells);

  std::size_t dim() const { return corner_.dim(); }
  const Point& corner() const { return corner_; }
  double step() const { return h_; }
  std::size_t cells(std::size_t axis) const { return cells_[axis]; }
  const std::array<std::size_t, kMaxDim>& cells() const { return cells_; }
  std::size_t cell_count() const;
  double extent(std::size_t axis) const { return static_cast<double>(cells_[axis]) * h_; }
  Box box() const;
  double cell_volume() const;

  /// Flat index with axis 0 varying slowest (row-major).
  std::size_t flat(const std::array<std::size_t, kMaxDim>& idx) const;
  std::array<std::size_t, kMaxDim> unflat(std::size_t flat) const;
  Point cell_center(std::size_t flat) const;
  Cube cell_cube(std::size_t flat) const;

  /// Same box, `factor` times as many cells per axis.
  GridSpec refined(std::size_t factor) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) = default;

 private:
  Point corner_;
  std::array<std::size_t, kMaxDim> cells_{1, 1, 1};
  double h_ = 1.0;
};

/// Piecewise-constant function on a GridSpec: the value of a cell is the
/// value on the whole cell. Outside the box the function is 0.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(GridSpec spec, double fill = 0.0);
  GridFunction(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Samples `fn` at every cell center.
  template <class Fn>
  static GridFunction sample(const GridSpec& spec, Fn&& fn) {
    GridFunction g(spec);
    for (std::size_t k = 0; k < g.size(); ++k) g.values_[k] = fn(spec.cell_center(k));
    return g;
  }

  GridFunction abs() const;
  GridFunction scaled(double c) const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Nonnegative, not identically zero grid function.
class Weight {
 public:
  /// Throws Error on a negative or non-finite value, or on w == 0.
  explicit Weight(GridFunction w);
  /// Constant weight c > 0.
  static Weight constant(const GridSpec& spec, double c = 1.0);

  const GridFunction& function() const { return w_; }
  const GridSpec& spec() const { return w_.spec(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  GridFunction w_;
};

/// Cellwise |f|^p w. Throws Error("grid mismatch") when the grids differ.
GridFunction weighted_power(const GridFunction& f, const Weight& w, double p);

/// w(cell) = |cell_center - center|^a. Throws Error when a cell center
/// coincides with `center` (choose a grid on which it is a node instead).
Weight sample_power_weight(double a, const Point& center, const GridSpec& spec);

/// Cell centers of the marked cells, as a reference set Omega.
PointSet mask_points(const GridFunction& mask);

void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace morrey
