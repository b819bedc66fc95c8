#include "morrey/summed_table.hpp"

#include <algorithm>
#include <cmath>

#include "morrey/error.hpp"

namespace morrey {

namespace {

constexpr double kSnap = 1e-9;

}  // namespace

SummedTable::SummedTable(const GridFunction& f) : spec_(f.spec()) {
  const std::size_t n = spec_.dim();
  std::size_t total = 1;
  for (std::size_t i = n; i-- > 0;) {
    stride_[i] = total;
    total *= spec_.cells(i) + 1;
  }
  table_.assign(total, 0.0L);
  const long double vol = spec_.cell_volume();

  // Cell (i_0..i_{n-1}) lands at corner (i_0+1, ..., i_{n-1}+1).
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto idx = spec_.unflat(k);
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += (idx[i] + 1) * stride_[i];
    table_[t] = static_cast<long double>(f[k]) * vol;
  }
  for (std::size_t axis = 0; axis < n; ++axis) {
    const std::size_t s = stride_[axis];
    const std::size_t len = spec_.cells(axis) + 1;
    for (std::size_t t = 0; t < total; ++t) {
      if ((t / s) % len == 0) continue;
      table_[t] += table_[t - s];
    }
  }
}

long double SummedTable::corner(const std::array<std::size_t, kMaxDim>& idx) const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < spec_.dim(); ++i) t += idx[i] * stride_[i];
  return table_[t];
}

long double SummedTable::prefix(const std::array<double, kMaxDim>& u) const {
  const std::size_t n = spec_.dim();
  std::array<std::size_t, kMaxDim> base{};
  std::array<long double, kMaxDim> frac{};
  for (std::size_t i = 0; i < n; ++i) {
    const double cells = static_cast<double>(spec_.cells(i));
    double x = std::clamp(u[i], 0.0, cells);
    double r = std::round(x);
    if (std::fabs(x - r) <= kSnap) x = r;
    double fl = std::floor(x);
    if (fl >= cells) fl = cells;
    base[i] = static_cast<std::size_t>(fl);
    frac[i] = x - fl;
  }
  long double acc = 0.0L;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    long double coef = 1.0L;
    auto idx = base;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        if (frac[i] == 0.0L) {
          coef = 0.0L;
          break;
        }
        coef *= frac[i];
        idx[i] += 1;
      } else {
        coef *= 1.0L - frac[i];
      }
    }
    if (coef != 0.0L) acc += coef * corner(idx);
  }
  return acc;
}

double SummedTable::integral(const Box& b) const {
  const std::size_t n = spec_.dim();
  if (b.dim() != n) throw Error("dimension mismatch");
  std::array<double, kMaxDim> lo{}, hi{};
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = (b.lo[i] - spec_.corner()[i]) / spec_.step();
    hi[i] = (b.hi[i] - spec_.corner()[i]) / spec_.step();
    if (!(hi[i] > lo[i])) return 0.0;
  }
  long double acc = 0.0L;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::array<double, kMaxDim> u{};
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        u[i] = lo[i];
        sign = -sign;
      } else {
        u[i] = hi[i];
      }
    }
    acc += sign * prefix(u);
  }
  return static_cast<double>(acc);
}

long double SummedTable::block_sum(const std::array<std::size_t, kMaxDim>& lo,
                                   const std::array<std::size_t, kMaxDim>& hi) const {
  const std::size_t n = spec_.dim();
  long double acc = 0.0L;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::array<std::size_t, kMaxDim> idx{};
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        idx[i] = lo[i];
        sign = -sign;
      } else {
        idx[i] = hi[i];
      }
    }
    acc += sign * corner(idx);
  }
  return acc;
}

long double SummedTable::total() const { return table_.back(); }

double cube_integral(const GridFunction& f, const Cube& q) { return SummedTable(f).integral(q); }

double cube_average(const GridFunction& f, const Cube& q) { return SummedTable(f).average(q); }

double weighted_p_mass(const GridFunction& f, const Weight& w, double p, const Cube& q) {
  if (!(p >= 1.0)) throw Error("exponent p must be at least 1");
  return SummedTable(weighted_power(f, w, p)).integral(q);
}

}  // namespace morrey
