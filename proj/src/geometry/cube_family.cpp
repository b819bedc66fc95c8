#include "morrey/cube_family.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "morrey/detail/overloaded.hpp"
#include "morrey/error.hpp"

namespace morrey {

using detail::Overloaded;

bool evaluate(const CubePredicate& pred, const Cube& q) {
  return std::visit(
      Overloaded{
          [](const AnyCube&) { return true; },
          [&](const NearSet& p) { return distance(q, p.omega) <= p.alpha * q.diam(); },
          [&](const FarSet& p) { return distance(q, p.omega) > p.alpha * q.diam(); },
          [&](const WhitneyBand& p) { return whitney_member(q, p.omega, p.r1, p.r2); },
          [&](const CustomPredicate& p) { return p.test(q); },
      },
      pred);
}

std::string describe(const CubePredicate& pred) {
  return std::visit(Overloaded{
                        [](const AnyCube&) -> std::string { return "any"; },
                        [](const NearSet&) -> std::string { return "near"; },
                        [](const FarSet&) -> std::string { return "far"; },
                        [](const WhitneyBand&) -> std::string { return "whitney"; },
                        [](const CustomPredicate& p) { return "custom:" + p.label; },
                    },
                    pred);
}

double ladder_side(double min_side, int rungs, int k) {
  const int octave = k / rungs;
  const int rung = k % rungs;
  const double frac = rung == 0 ? 1.0 : std::exp2(static_cast<double>(rung) / rungs);
  return std::ldexp(min_side * frac, octave);
}

int ladder_rung_at_least(double min_side, int rungs, double side) {
  int k = 0;
  while (ladder_side(min_side, rungs, k) < side) ++k;
  return k;
}

namespace {

constexpr double kAlignTol = 1e-9;

std::size_t aligned_count(double extent, double step) {
  const double q = extent / step;
  const double r = std::round(q);
  if (r < 1.0 || std::abs(q - r) > kAlignTol * std::max(1.0, q))
    throw Error("window extent is not a multiple of the alignment step");
  return static_cast<std::size_t>(r);
}

}  // namespace

CubeFamily::CubeFamily(FamilyKind kind, Truncation truncation)
    : kind_(std::move(kind)), truncation_(std::move(truncation)) {
  const Truncation& t = truncation_;
  if (t.window.dim() == 0 || t.window.empty()) throw Error("family window is empty");
  if (!(t.min_side >= 0.0) || !(t.max_side >= t.min_side)) throw Error("invalid side range");
  std::visit(Overloaded{
                 [&](const AllCubes&) {
                   if (!(t.step > 0.0)) throw Error("alignment step must be positive");
                 },
                 [&](const CenteredAt& c) {
                   if (!(t.min_side > 0.0) || !std::isfinite(t.max_side))
                     throw Error("centered family needs 0 < min_side <= max_side < inf");
                   if (c.rungs_per_octave < 1) throw Error("ladder needs at least one rung per octave");
                   if (!c.centers.empty() && c.centers.dim() != dim())
                     throw Error("center dimension does not match window");
                 },
                 [&](const Whitney& w) {
                   if (!(t.step > 0.0)) throw Error("alignment step must be positive");
                   if (!(0.0 < w.r1 && w.r1 < w.r2)) throw Error("Whitney family needs 0 < r1 < r2");
                   if (w.omega.empty()) throw Error("empty reference set");
                   if (w.omega.dim() != dim()) throw Error("reference set dimension does not match window");
                 },
                 [&](const DyadicRestricted& d) {
                   if (d.lattice.dim() != dim()) throw Error("lattice dimension does not match window");
                 },
             },
             kind_);
}

CubeFamily CubeFamily::all_cubes(const Box& window, double step, double min_side, double max_side) {
  return CubeFamily(AllCubes{}, Truncation{window, step, min_side, max_side});
}

CubeFamily CubeFamily::centered_at(PointSet centers, const Box& window, double min_side,
                                   double max_side, int rungs_per_octave) {
  return CubeFamily(CenteredAt{std::move(centers), rungs_per_octave},
                    Truncation{window, 0.0, min_side, max_side});
}

CubeFamily CubeFamily::whitney(PointSet omega, double r1, double r2, const Box& window, double step,
                               double min_side, double max_side) {
  return CubeFamily(Whitney{std::move(omega), r1, r2}, Truncation{window, step, min_side, max_side});
}

CubeFamily CubeFamily::dyadic(DyadicLattice lattice, CubePredicate predicate, const Box& window) {
  return CubeFamily(DyadicRestricted{std::move(lattice), std::move(predicate)},
                    Truncation{window, 0.0, 0.0, std::numeric_limits<double>::infinity()});
}

std::string CubeFamily::kind_name() const {
  return std::visit(Overloaded{
                        [](const AllCubes&) -> std::string { return "all_cubes"; },
                        [](const CenteredAt&) -> std::string { return "centered_at"; },
                        [](const Whitney&) -> std::string { return "whitney"; },
                        [](const DyadicRestricted&) -> std::string { return "dyadic"; },
                    },
                    kind_);
}

bool CubeFamily::satisfies_kind(const Cube& q) const {
  return std::visit(Overloaded{
                        [](const AllCubes&) { return true; },
                        [&](const CenteredAt& c) { return c.centers.find(q.center()).has_value(); },
                        [&](const Whitney& w) { return whitney_member(q, w.omega, w.r1, w.r2); },
                        [&](const DyadicRestricted& d) {
                          const DyadicLattice& lat = d.lattice;
                          for (int m = lat.min_level(); m <= lat.max_level(); ++m) {
                            if (lat.side(m) != q.side()) continue;
                            return lat.cube(lat.locate(m, q.center())) == q && evaluate(d.predicate, q);
                          }
                          return false;
                        },
                    },
                    kind_);
}

AlignedLayout CubeFamily::aligned_layout() const {
  if (!std::holds_alternative<AllCubes>(kind_) && !std::holds_alternative<Whitney>(kind_))
    throw Error("family kind is not grid-aligned");
  const Truncation& t = truncation_;
  AlignedLayout a;
  std::size_t max_m = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < dim(); ++i) {
    a.cells[i] = aligned_count(t.window.extent(i), t.step);
    max_m = std::min(max_m, a.cells[i]);
  }
  const double lo_m = std::ceil(t.min_side / t.step - kAlignTol);
  const double hi_m = std::floor(t.max_side / t.step + kAlignTol);
  a.m_first = static_cast<std::size_t>(std::max(1.0, lo_m));
  a.m_last = hi_m >= static_cast<double>(max_m) ? max_m : static_cast<std::size_t>(std::max(0.0, hi_m));
  return a;
}

Cube CubeFamily::aligned_cube(const std::array<std::size_t, kMaxDim>& corner, std::size_t m) const {
  const Truncation& t = truncation_;
  Point lo(dim());
  for (std::size_t i = 0; i < dim(); ++i) lo[i] = t.window.lo[i] + static_cast<double>(corner[i]) * t.step;
  return Cube::from_corner(lo, static_cast<double>(m) * t.step);
}

void CubeFamily::for_each_aligned(const CubeVisitor& visit,
                                  const std::function<bool(const Cube&)>& keep) const {
  const std::size_t n = dim();
  const AlignedLayout layout = aligned_layout();
  const auto& cells = layout.cells;
  const std::size_t m_first = layout.m_first;
  const std::size_t m_last = layout.m_last;

  for (std::size_t m = m_first; m <= m_last; ++m) {
    std::array<std::size_t, kMaxDim> span{1, 1, 1};
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      span[i] = cells[i] - m + 1;
      total *= span[i];
    }
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::array<std::size_t, kMaxDim> corner{};
      std::size_t rem = flat;
      for (std::size_t i = n; i-- > 0;) {
        corner[i] = rem % span[i];
        rem /= span[i];
      }
      const Cube q = aligned_cube(corner, m);
      if (keep(q)) visit(q);
    }
  }
}

void CubeFamily::for_each(const CubeVisitor& visit) const {
  const Truncation& t = truncation_;
  std::visit(
      Overloaded{
          [&](const AllCubes&) { for_each_aligned(visit, [](const Cube&) { return true; }); },
          [&](const Whitney& w) {
            for_each_aligned(visit, [&](const Cube& q) { return whitney_member(q, w.omega, w.r1, w.r2); });
          },
          [&](const CenteredAt& c) {
            std::vector<Point> centers;
            for (const Point& x : c.centers)
              if (t.window.contains(x)) centers.push_back(x);
            std::sort(centers.begin(), centers.end());
            for (const Point& x : centers) {
              for (int k = 0;; ++k) {
                const double side = ladder_side(t.min_side, c.rungs_per_octave, k);
                if (side > t.max_side) break;
                visit(Cube(x, side));
              }
            }
          },
          [&](const DyadicRestricted& d) {
            const DyadicLattice& lat = d.lattice;
            const std::size_t n = dim();
            for (int m = lat.max_level(); m >= lat.min_level(); --m) {
              const double side = lat.side(m);
              if (side < t.min_side || side > t.max_side) continue;
              const auto [first, last] = lat.covering_range(m, t.window);
              std::array<std::int64_t, kMaxDim> span{1, 1, 1};
              std::size_t total = 1;
              for (std::size_t i = 0; i < n; ++i) {
                span[i] = last[i] - first[i] + 1;
                total *= static_cast<std::size_t>(span[i]);
              }
              for (std::size_t flat = 0; flat < total; ++flat) {
                LatticeCube c{m, {}};
                auto rem = static_cast<std::int64_t>(flat);
                for (std::size_t i = n; i-- > 0;) {
                  c.index[i] = first[i] + rem % span[i];
                  rem /= span[i];
                }
                const Cube q = lat.cube(c);
                if (evaluate(d.predicate, q)) visit(q);
              }
            }
          },
      },
      kind_);
}

std::vector<Cube> CubeFamily::enumerate() const {
  std::vector<Cube> out;
  for_each([&](const Cube& q) { out.push_back(q); });
  return out;
}

std::size_t CubeFamily::count() const {
  std::size_t k = 0;
  for_each([&](const Cube&) { ++k; });
  return k;
}

}  // namespace morrey
