#include "morrey/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "morrey/error.hpp"

namespace morrey {

namespace {

// Cell index range [first, last] whose centers lie in the closed [lo, hi].
bool center_range(const GridSpec& g, std::size_t axis, double lo, double hi, std::size_t& first,
                  std::size_t& last) {
  const double h = g.step();
  const double c = g.corner()[axis];
  double a = std::ceil((lo - c) / h - 0.5);
  double b = std::floor((hi - c) / h - 0.5);
  // Nudge for rounding in the division: confirm against the actual centers.
  while (a > 0 && c + (a - 0.5) * h >= lo) a -= 1;
  while (c + (a + 0.5) * h < lo) a += 1;
  while (c + (b + 1.5) * h <= hi) b += 1;
  while (b >= 0 && c + (b + 0.5) * h > hi) b -= 1;
  a = std::max(a, 0.0);
  b = std::min(b, static_cast<double>(g.cells(axis)) - 1);
  if (b < a) return false;
  first = static_cast<std::size_t>(a);
  last = static_cast<std::size_t>(b);
  return true;
}

// Window offset of an all-cubes family whose alignment lattice is the grid's
// own cell lattice; nullopt when the fast path does not apply.
std::optional<std::array<std::int64_t, kMaxDim>> grid_offset(const CubeFamily& fam, const GridSpec& g) {
  if (!std::holds_alternative<AllCubes>(fam.kind())) return std::nullopt;
  const Truncation& t = fam.truncation();
  const double h = g.step();
  if (std::fabs(t.step - h) > 1e-12 * h) return std::nullopt;
  std::array<std::int64_t, kMaxDim> off{};
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const double q = (t.window.lo[i] - g.corner()[i]) / h;
    const double r = std::round(q);
    if (std::fabs(q - r) > 1e-9) return std::nullopt;
    off[i] = static_cast<std::int64_t>(r);
  }
  return off;
}

// Replaces dims[axis] = len by len + m - 1, each output p holding the max of
// the inputs a with p - m + 1 <= a <= p (monotone deque per line).
std::vector<double> sliding_max(const std::vector<double>& in, std::array<std::size_t, kMaxDim>& dims,
                                std::size_t n, std::size_t axis, std::size_t m) {
  const std::size_t len = dims[axis];
  const std::size_t out_len = len + m - 1;
  std::size_t inner = 1, outer = 1;
  for (std::size_t i = axis + 1; i < n; ++i) inner *= dims[i];
  for (std::size_t i = 0; i < axis; ++i) outer *= dims[i];
  std::vector<double> out(outer * out_len * inner);
  std::deque<std::size_t> dq;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in_i = 0; in_i < inner; ++in_i) {
      auto at = [&](std::size_t a) { return in[(o * len + a) * inner + in_i]; };
      dq.clear();
      for (std::size_t p = 0; p < out_len; ++p) {
        if (p < len) {
          while (!dq.empty() && at(dq.back()) <= at(p)) dq.pop_back();
          dq.push_back(p);
        }
        while (dq.front() + m <= p) dq.pop_front();
        out[(o * out_len + p) * inner + in_i] = at(dq.front());
      }
    }
  }
  dims[axis] = out_len;
  return out;
}

// All grid-aligned cubes at once: per side length, the cube averages are
// spread over the cells they cover with a separable sliding-window max.
std::size_t aligned_maximal(const SummedTable& table, const CubeFamily& fam,
                            const std::array<std::int64_t, kMaxDim>& off, GridFunction& out) {
  const GridSpec& g = out.spec();
  const std::size_t n = g.dim();
  const AlignedLayout layout = fam.aligned_layout();
  std::size_t count = 0;
  for (std::size_t m = layout.m_first; m <= layout.m_last; ++m) {
    std::array<std::size_t, kMaxDim> dims{1, 1, 1};
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      dims[i] = layout.cells[i] - m + 1;
      total *= dims[i];
    }
    count += total;
    std::vector<double> avg(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::array<std::size_t, kMaxDim> corner{};
      std::size_t rem = flat;
      for (std::size_t i = n; i-- > 0;) {
        corner[i] = rem % dims[i];
        rem /= dims[i];
      }
      avg[flat] = table.average(fam.aligned_cube(corner, m));
    }
    for (std::size_t axis = 0; axis < n; ++axis) avg = sliding_max(avg, dims, n, axis, m);
    // dims now equals the window cell counts.
    std::size_t wtotal = 1;
    for (std::size_t i = 0; i < n; ++i) wtotal *= dims[i];
    for (std::size_t flat = 0; flat < wtotal; ++flat) {
      std::array<std::size_t, kMaxDim> cell{};
      std::size_t rem = flat;
      bool inside = true;
      for (std::size_t i = n; i-- > 0;) {
        const auto k = static_cast<std::int64_t>(rem % dims[i]) + off[i];
        rem /= dims[i];
        inside = inside && k >= 0 && k < static_cast<std::int64_t>(g.cells(i));
        cell[i] = static_cast<std::size_t>(std::max<std::int64_t>(k, 0));
      }
      if (!inside) continue;
      double& v = out[g.flat(cell)];
      v = std::max(v, avg[flat]);
    }
  }
  return count;
}

}  // namespace

MaximalField maximal_exact(const GridFunction& f, const CubeFamily& cube_set) {
  const GridSpec& g = f.spec();
  if (cube_set.dim() != g.dim()) throw Error("dimension mismatch");
  const SummedTable table(f.abs());
  GridFunction out(g, 0.0);
  if (const auto off = grid_offset(cube_set, g)) {
    if (aligned_maximal(table, cube_set, *off, out) == 0) throw Error("family truncation produced no cubes");
    return {std::move(out), "maximal_exact over all_cubes"};
  }
  return maximal_brute_force(f, cube_set);
}

MaximalField maximal_brute_force(const GridFunction& f, const CubeFamily& cube_set) {
  const GridSpec& g = f.spec();
  if (cube_set.dim() != g.dim()) throw Error("dimension mismatch");
  const SummedTable table(f.abs());
  GridFunction out(g, 0.0);
  std::size_t count = 0;
  const std::size_t n = g.dim();
  cube_set.for_each([&](const Cube& q) {
    ++count;
    std::array<std::size_t, kMaxDim> first{}, last{};
    for (std::size_t i = 0; i < n; ++i)
      if (!center_range(g, i, q.lo(i), q.hi(i), first[i], last[i])) return;
    const double avg = table.average(q);
    auto idx = first;
    while (true) {
      double& v = out[g.flat(idx)];
      v = std::max(v, avg);
      std::size_t i = n;
      while (i-- > 0) {
        if (idx[i] < last[i]) {
          ++idx[i];
          break;
        }
        idx[i] = first[i];
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  });
  if (count == 0) throw Error("family truncation produced no cubes");
  return {std::move(out), "maximal_exact over " + cube_set.kind_name()};
}

MaximalField maximal_dyadic(const GridFunction& f, const DyadicLattice& lattice,
                            const std::optional<CubePredicate>& restriction) {
  const GridSpec& g = f.spec();
  const std::size_t n = g.dim();
  if (lattice.dim() != n) throw Error("dimension mismatch");
  const SummedTable table(f.abs());
  const Box box = g.box();
  GridFunction out(g, 0.0);

  std::vector<double> level_avg;
  std::vector<char> level_ok;
  for (int m = lattice.max_level(); m >= lattice.min_level(); --m) {
    const auto [first, last] = lattice.covering_range(m, box);
    std::array<std::int64_t, kMaxDim> span{1, 1, 1};
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      span[i] = last[i] - first[i] + 1;
      total *= static_cast<std::size_t>(span[i]);
    }
    level_avg.assign(total, 0.0);
    level_ok.assign(total, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      LatticeCube c{m, {}};
      auto rem = static_cast<std::int64_t>(flat);
      for (std::size_t i = n; i-- > 0;) {
        c.index[i] = first[i] + rem % span[i];
        rem /= span[i];
      }
      const Cube q = lattice.cube(c);
      if (restriction && !evaluate(*restriction, q)) continue;
      level_ok[flat] = 1;
      level_avg[flat] = table.average(q);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      const LatticeCube c = lattice.locate(m, g.cell_center(k));
      std::size_t flat = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (c.index[i] < first[i] || c.index[i] > last[i]) throw Error("cell located outside the lattice range");
        flat = flat * static_cast<std::size_t>(span[i]) + static_cast<std::size_t>(c.index[i] - first[i]);
      }
      if (level_ok[flat]) out[k] = std::max(out[k], level_avg[flat]);
    }
  }
  std::string prov = "maximal_dyadic shift=(";
  for (std::size_t i = 0; i < n; ++i) prov += (i ? "," : "") + std::to_string(lattice.shift_thirds()[i]);
  prov += ")";
  if (restriction) prov += " restricted to " + describe(*restriction);
  return {std::move(out), prov};
}

MaximalField three_lattice_bound(const GridFunction& f, const std::vector<DyadicLattice>& lattices) {
  const std::size_t n = f.spec().dim();
  std::size_t expect = 1;
  for (std::size_t i = 0; i < n; ++i) expect *= 3;
  if (lattices.size() != expect) throw Error("three_lattice_bound needs exactly 3^n lattices");
  GridFunction sum(f.spec(), 0.0);
  for (const auto& lat : lattices) {
    MaximalField m = maximal_dyadic(f, lat);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += m.values[k];
  }
  return {sum.scaled(static_cast<double>(expect)), "3^n sum over shifted dyadic lattices"};
}

OperatorNormEstimate operator_norm_estimate(const MaximalOperator& op, const NormSpec& space,
                                            const Corpus& corpus) {
  OperatorNormEstimate est;
  for (const auto& entry : corpus) {
    const double denom = norm_in(space, entry.f);
    if (!(denom > 0.0)) {
      ++est.skipped;
      continue;
    }
    const double ratio = norm_in(space, op(entry.f)) / denom;
    if (est.evaluated == 0 || ratio > est.value) {
      est.value = ratio;
      est.argmax_label = entry.label;
    }
    ++est.evaluated;
  }
  if (est.evaluated == 0) throw Error("corpus has no function of nonzero norm");
  return est;
}

}  // namespace morrey
