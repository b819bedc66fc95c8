#include <catch_amalgamated.hpp>

#include <cmath>

#include "morrey/error.hpp"
#include "morrey/maximal.hpp"
#include "oracles.hpp"

using namespace morrey;
using Catch::Approx;

namespace {

// Pointwise sup of <|f|>_Q over the given cubes, cell by cell.
GridFunction brute_maximal(const GridFunction& f, const std::vector<Cube>& cubes) {
  const GridSpec& g = f.spec();
  GridFunction a = f.abs();
  GridFunction out(g, 0.0);
  for (const Cube& q : cubes) {
    const double avg = static_cast<double>(oracle::naive_integral(a, q)) / q.volume();
    for (std::size_t k = 0; k < out.size(); ++k)
      if (q.contains(g.cell_center(k))) out[k] = std::max(out[k], avg);
  }
  return out;
}

}  // namespace

TEST_CASE("maximal function of a constant") {
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 8, 0.125);
  MaximalField m = maximal_exact(GridFunction(g, 2.0), CubeFamily::all_cubes(g.box(), g.step()));
  for (double v : m.values.values()) CHECK(v == Approx(2.0));
  auto lats = build_shifted_lattices(2, Point{0.0, 0.0}, 8, 0.125);
  MaximalField d = maximal_dyadic(GridFunction(g, 2.0), lats[0]);
  for (double v : d.values.values()) CHECK(v == Approx(2.0));
}

TEST_CASE("maximal function of an indicator in one dimension") {
  GridSpec g = GridSpec::cubic({0.0}, 64, 2.0 / 64);
  GridFunction chi = GridFunction::sample(g, [](const Point& x) { return x[0] < 1.0 ? 1.0 : 0.0; });
  MaximalField m = maximal_exact(chi, CubeFamily::all_cubes(g.box(), g.step()));
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    const double x = g.cell_center(k)[0];
    if (x < 1.0) {
      CHECK(m.values[k] == Approx(1.0));
    } else {
      // Best grid cube [0, b] with b the first node right of x.
      const double b = std::ceil(x / g.step()) * g.step();
      CHECK(m.values[k] == Approx(1.0 / b));
    }
  }
  auto lats = build_shifted_lattices(1, Point{0.0}, 64, 2.0 / 64);
  MaximalField d = maximal_dyadic(chi, lats[0]);
  for (std::size_t k = 0; k < g.cell_count(); ++k)
    CHECK(d.values[k] == Approx(g.cell_center(k)[0] < 1.0 ? 1.0 : 0.5));
}

TEST_CASE("exact maximal function matches brute force") {
  Rng rng(17);
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 8, 0.125);
  GridFunction f = oracle::random_field(g, rng);
  MaximalField m = maximal_exact(f, CubeFamily::all_cubes(g.box(), g.step()));
  GridFunction b = brute_maximal(f, oracle::all_grid_cubes(g));
  for (std::size_t k = 0; k < b.size(); ++k) CHECK(oracle::rel_err(m.values[k], b[k]) <= 1e-12);
}

TEST_CASE("monotonicity, sublinearity and domination of |f|") {
  Rng rng(23);
  GridSpec g = GridSpec::cubic({0.0}, 32, 1.0 / 32);
  CubeFamily all = CubeFamily::all_cubes(g.box(), g.step());
  auto lats = build_shifted_lattices(1, Point{0.0}, 32, 1.0 / 32);
  for (int trial = 0; trial < 5; ++trial) {
    GridFunction f = oracle::random_field(g, rng);
    GridFunction h = oracle::random_field(g, rng);
    GridFunction big = f.abs() + GridFunction(g, 0.1);
    auto mf = maximal_exact(f, all).values;
    auto mh = maximal_exact(h, all).values;
    auto mb = maximal_exact(big, all).values;
    auto ms = maximal_exact(f + h, all).values;
    for (const auto& lat : lats) {
      auto df = maximal_dyadic(f, lat).values;
      auto dh = maximal_dyadic(h, lat).values;
      auto ds = maximal_dyadic(f + h, lat).values;
      for (std::size_t k = 0; k < g.cell_count(); ++k) {
        CHECK(ds[k] <= df[k] + dh[k] + 1e-12);
      }
    }
    auto d0 = maximal_dyadic(f, lats[0]).values;
    for (std::size_t k = 0; k < g.cell_count(); ++k) {
      CHECK(mf[k] >= std::fabs(f[k]) - 1e-12);
      CHECK(d0[k] >= std::fabs(f[k]) - 1e-12);
      CHECK(mb[k] >= mf[k]);
      CHECK(ms[k] <= mf[k] + mh[k] + 1e-12);
    }
  }
}

TEST_CASE("restricted dyadic maximal equals brute force over the same cubes") {
  Rng rng(31);
  for (std::size_t n : {1, 2}) {
    const std::size_t cells = n == 1 ? 64 : 16;
    GridSpec g = GridSpec::cubic(Point(n, 0.0), cells, 1.0 / cells);
    auto lats = build_shifted_lattices(n, g.corner(), cells, g.step());
    PointSet omega({Point(n, 0.37)});
    GridFunction f = oracle::random_field(g, rng);
    for (const auto& lat : lats) {
      for (const CubePredicate& pred : {CubePredicate{AnyCube{}}, CubePredicate{NearSet{omega, 1.0}},
                                        CubePredicate{FarSet{omega, 1.0}}}) {
        auto d = maximal_dyadic(f, lat, pred).values;
        auto e = maximal_exact(f, CubeFamily::dyadic(lat, pred, g.box())).values;
        for (std::size_t k = 0; k < d.size(); ++k) CHECK(d[k] == e[k]);
      }
    }
  }
}

TEST_CASE("near/far split recombines the dyadic maximal function") {
  Rng rng(41);
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 16, 1.0 / 16);
  auto lats = build_shifted_lattices(2, g.corner(), 16, g.step());
  PointSet omega({Point{0.2, 0.7}, Point{0.9, 0.1}});
  GridFunction f = oracle::random_field(g, rng);
  for (const auto& lat : lats) {
    auto all = maximal_dyadic(f, lat).values;
    auto near = maximal_dyadic(f, lat, NearSet{omega, 1.5}).values;
    auto far = maximal_dyadic(f, lat, FarSet{omega, 1.5}).values;
    for (std::size_t k = 0; k < all.size(); ++k) {
      CHECK(all[k] == std::max(near[k], far[k]));
      CHECK(near[k] <= all[k]);
    }
    // Shrinking the restriction never increases the output.
    auto nearer = maximal_dyadic(f, lat, NearSet{omega, 0.5}).values;
    for (std::size_t k = 0; k < all.size(); ++k) CHECK(nearer[k] <= near[k]);
  }
}

TEST_CASE("three-lattice bound dominates the exact maximal function") {
  GridSpec g = GridSpec::cubic({0.0}, 32, 1.0 / 32);
  auto lats = build_shifted_lattices(1, g.corner(), 32, g.step());
  auto b = three_lattice_bound(GridFunction(g, 1.0), lats).values;
  // Edge cells only see lattice cubes poking out of the window, where f is 0.
  for (std::size_t k = 1; k + 1 < b.size(); ++k) CHECK(b[k] == Approx(9.0));
  CHECK(b[0] >= 1.0);
  CHECK(b[b.size() - 1] >= 1.0);
  Rng rng(53);
  GridFunction f = oracle::random_field(g, rng);
  auto m = maximal_exact(f, CubeFamily::all_cubes(g.box(), g.step())).values;
  auto t = three_lattice_bound(f, lats).values;
  for (std::size_t k = 0; k < m.size(); ++k) CHECK(t[k] >= m[k]);
  CHECK_THROWS_AS(three_lattice_bound(f, {lats[0]}), Error);
}

TEST_CASE("operator norm estimates") {
  GridSpec g = GridSpec::cubic({0.0}, 32, 1.0 / 32);
  CubeFamily all = CubeFamily::all_cubes(g.box(), g.step());
  MaximalOperator op = [&](const GridFunction& f) { return maximal_exact(f, all).values; };
  LebesgueSpace l2{Weight::constant(g), 2.0};
  Corpus corpus{{"box", GridFunction(g, 1.0)}};
  auto e1 = operator_norm_estimate(op, l2, corpus);
  CHECK(e1.value >= 1.0 - 1e-12);
  corpus.push_back({"zero", GridFunction(g, 0.0)});
  corpus.push_back({"spike", GridFunction::sample(g, [](const Point& x) { return x[0] < 0.1 ? 1.0 : 0.0; })});
  auto e2 = operator_norm_estimate(op, l2, corpus);
  CHECK(e2.value >= e1.value);
  CHECK(e2.skipped == 1);
  CHECK(e2.argmax_label == "spike");
  CHECK_THROWS_AS(operator_norm_estimate(op, l2, Corpus{{"zero", GridFunction(g, 0.0)}}), Error);

  // L^2 boundedness: the estimate stays put under refinement.
  std::vector<double> est;
  for (std::size_t cells : {16, 32, 64}) {
    GridSpec gr = GridSpec::cubic({0.0}, cells, 1.0 / cells);
    CubeFamily fam = CubeFamily::all_cubes(gr.box(), gr.step());
    MaximalOperator m = [&](const GridFunction& f) { return maximal_exact(f, fam).values; };
    Corpus c{{"spike", GridFunction::sample(gr, [](const Point& x) { return x[0] < 0.125 ? 1.0 : 0.0; })},
             {"ramp", GridFunction::sample(gr, [](const Point& x) { return x[0]; })}};
    est.push_back(operator_norm_estimate(m, LebesgueSpace{Weight::constant(gr), 2.0}, c).value);
  }
  CHECK(*std::max_element(est.begin(), est.end()) / *std::min_element(est.begin(), est.end()) < 1.2);
}

TEST_CASE("sliding-window path agrees with the cube loop") {
  Rng rng(83);
  for (std::size_t n : {1, 2, 3}) {
    const std::size_t cells = n == 1 ? 40 : (n == 2 ? 12 : 6);
    GridSpec g = GridSpec::cubic(Point(n, -0.5), cells, 1.0 / cells);
    GridFunction f = oracle::random_field(g, rng);
    // Window inside, equal to, and sticking out of the grid box.
    for (double shift : {0.0, 2.0, -3.0}) {
      Box win = g.box();
      for (std::size_t i = 0; i < n; ++i) {
        win.lo[i] += shift * g.step();
        win.hi[i] -= (shift > 0 ? 1.0 : 0.0) * g.step();
      }
      for (auto [lo, hi] : {std::pair{0.0, 1e300}, {0.2, 0.5}}) {
        CubeFamily fam = CubeFamily::all_cubes(win, g.step(), lo, hi > 1e299 ? INFINITY : hi);
        auto a = maximal_exact(f, fam).values;
        auto b = maximal_brute_force(f, fam).values;
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
      }
    }
  }
}
