#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "morrey/error.hpp"
#include "morrey/grid_io.hpp"
#include "morrey/summed_table.hpp"
#include "oracles.hpp"

using namespace morrey;
using Catch::Approx;

TEST_CASE("cube integrals of simple step functions") {
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 8, 0.125);
  GridFunction one(g, 1.0);
  CHECK(cube_integral(one, Cube::from_corner({0.0, 0.0}, 0.5)) == Approx(0.25));

  GridFunction left = GridFunction::sample(g, [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; });
  CHECK(cube_integral(left, Cube::from_corner({0.0, 0.0}, 1.0)) == Approx(0.5));

  CHECK(cube_average(one.scaled(3.0), Cube({0.5, 0.5}, 0.3)) == Approx(3.0));
  // Half outside: the average still divides by the whole cube.
  GridSpec g1 = GridSpec::cubic({0.0}, 16, 1.0 / 16);
  CHECK(cube_average(GridFunction(g1, 1.0), Cube::from_corner({-0.25}, 0.5)) == Approx(0.5));
}

TEST_CASE("summed table matches direct sums exactly on integer corners") {
  Rng rng(11);
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 16, 1.0);
  // Integer-valued data: every partial sum is exact in any precision.
  GridFunction f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = static_cast<double>(rng.below(100));
  SummedTable t(f);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<std::size_t, kMaxDim> lo{}, hi{};
    for (std::size_t i = 0; i < 2; ++i) {
      lo[i] = rng.below(16);
      hi[i] = lo[i] + 1 + rng.below(16 - lo[i]);
    }
    long double direct = 0.0L;
    for (std::size_t a = lo[0]; a < hi[0]; ++a)
      for (std::size_t b = lo[1]; b < hi[1]; ++b) direct += f[g.flat({a, b, 0})];
    CHECK(t.block_sum(lo, hi) == direct);
  }
}

TEST_CASE("fractional cube integrals match the naive overlap sum") {
  Rng rng(2024);
  for (std::size_t n : {1, 2, 3}) {
    const std::size_t cells = n == 1 ? 256 : (n == 2 ? 64 : 12);
    GridSpec g = GridSpec::cubic(Point(n, -0.5), cells, 1.0 / cells);
    GridFunction f = oracle::random_field(g, rng, 0.0, 1.0);
    SummedTable t(f);
    for (int trial = 0; trial < 30; ++trial) {
      Cube q = oracle::random_cube(g, rng);
      const double want = static_cast<double>(oracle::naive_integral(f, q));
      CHECK(oracle::rel_err(t.integral(q), want) <= 1e-12);
    }
  }
}

TEST_CASE("integral is additive over child cubes") {
  Rng rng(7);
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 32, 1.0 / 32);
  GridFunction f = oracle::random_field(g, rng);
  SummedTable t(f);
  for (int trial = 0; trial < 50; ++trial) {
    Cube q = oracle::random_cube(g, rng);
    double sum = 0.0;
    for (std::size_t c = 0; c < q.child_count(); ++c) sum += t.integral(q.children()[c]);
    CHECK(sum == Approx(t.integral(q)).margin(1e-13));
  }
}

TEST_CASE("weighted mass") {
  GridSpec g = GridSpec::cubic({0.0, 0.0}, 8, 0.125);
  Weight w1 = Weight::constant(g);
  CHECK(weighted_p_mass(GridFunction(g, 3.0), w1, 2.0, Cube::from_corner({0.25, 0.25}, 0.5)) ==
        Approx(2.25));
  Rng rng(3);
  Weight w = oracle::random_weight(g, rng);
  GridFunction one(g, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Cube q = oracle::random_cube(g, rng);
    CHECK(weighted_p_mass(one, w, 1.0, q) == Approx(cube_integral(w.function(), q)).epsilon(1e-13));
  }
  GridSpec other = GridSpec::cubic({0.0, 0.0}, 4, 0.25);
  CHECK_THROWS_WITH(weighted_p_mass(GridFunction(other, 1.0), w1, 2.0, Cube({0.5, 0.5}, 0.5)),
                    "grid mismatch");
}

TEST_CASE("power weights") {
  GridSpec g = GridSpec::centered(1, 1.0, 8);
  Weight w0 = sample_power_weight(0.0, Point{0.0}, g);
  for (double v : w0.function().values()) CHECK(v == 1.0);

  GridSpec unit = GridSpec::cubic({0.0}, 1, 1.0);
  CHECK(sample_power_weight(2.0, Point{0.0}, unit)[0] == 0.25);

  Weight wn = sample_power_weight(-0.5, Point{0.0}, g);
  for (double v : wn.function().values()) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  GridSpec odd = GridSpec::centered(1, 1.0, 9);
  CHECK_THROWS_AS(sample_power_weight(-0.5, Point{0.0}, odd), Error);
}

TEST_CASE("weights must be nonnegative and nonzero") {
  GridSpec g = GridSpec::cubic({0.0}, 4, 0.25);
  CHECK_THROWS_AS(Weight(GridFunction(g, 0.0)), Error);
  CHECK_THROWS_AS(Weight(GridFunction(g, std::vector<double>{1.0, -1.0, 1.0, 1.0})), Error);
}

TEST_CASE("grid files round-trip") {
  Rng rng(99);
  GridSpec g = GridSpec::cubic({-0.3, 0.1}, 5, 0.1);
  GridFunction f = oracle::random_field(g, rng);
  f[3] = 1.0 / 3.0;

  std::stringstream bin;
  write_grid_binary(bin, f);
  GridFunction b = read_grid_binary(bin);
  CHECK(b.spec() == f.spec());
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(std::memcmp(&b[k], &f[k], sizeof(double)) == 0);

  std::stringstream csv;
  write_grid_csv(csv, f, "random field\nseed 99");
  GridFunction c = read_grid_csv(csv);
  CHECK(c.spec().cells() == f.spec().cells());
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(c[k] == f[k]);

  std::stringstream junk("not a grid");
  CHECK_THROWS_AS(read_grid_binary(junk), Error);
  std::stringstream bad("n,2\ncorner,0,0\nextent,1,1\nh,0.5\n1,2\n3\n");
  CHECK_THROWS_AS(read_grid_csv(bad), Error);

  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "morrey_test_grid.bin").string();
  const std::string p2 = (dir / "morrey_test_grid.csv").string();
  save_grid(p1, f);
  save_grid(p2, f);
  CHECK(load_grid(p1).values()[3] == f[3]);
  CHECK(load_grid(p2).values()[3] == f[3]);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}
