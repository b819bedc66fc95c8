#pragma once

#include <vector>

#include "morrey/grid_function.hpp"

namespace morrey {

/// Prefix integrals S[I] = sum over cells j < I (componentwise) of
/// value_j * h^n on the (cells+1)^n corner lattice, accumulated in long
/// double. The prefix integral of a step function is multilinear inside each
/// cell, so interpolating S gives exact integrals over arbitrary boxes.
class SummedTable {
 public:
  explicit SummedTable(const GridFunction& f);

  const GridSpec& spec() const { return spec_; }

  /// Integral of the step function over b (intersected with the grid box).
  double integral(const Box& b) const;
  double integral(const Cube& q) const { return integral(q.box()); }
  /// integral(q) / |q| with the full cube volume, even when q leaves the box.
  double average(const Cube& q) const { return integral(q) / q.volume(); }
  /// Sum over the integer corner range [lo, hi) of cell indices.
  long double block_sum(const std::array<std::size_t, kMaxDim>& lo,
                        const std::array<std::size_t, kMaxDim>& hi) const;
  long double total() const;

 private:
  long double corner(const std::array<std::size_t, kMaxDim>& idx) const;
  long double prefix(const std::array<double, kMaxDim>& u) const;

  GridSpec spec_;
  std::array<std::size_t, kMaxDim> stride_{};
  std::vector<long double> table_;
};

/// One-shot helpers; build a table per call.
double cube_integral(const GridFunction& f, const Cube& q);
double cube_average(const GridFunction& f, const Cube& q);
double weighted_p_mass(const GridFunction& f, const Weight& w, double p, const Cube& q);

}  // namespace morrey
