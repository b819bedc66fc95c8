#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "morrey/lab/cli.hpp"
#include "morrey/lab/scan.hpp"
#include "morrey/lab/verify.hpp"
#include "morrey/lacunary.hpp"
#include "morrey/rng.hpp"

using namespace morrey;
using namespace morrey::lab;
namespace fs = std::filesystem;

namespace {

const Check& find_check(const Report& r, const std::string& name) {
  for (const Check& c : r.checks())
    if (c.name == name) return c;
  FAIL("no check named " << name);
  throw;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("morrey_lab_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const Json& cfg) {
  fs::path p = dir / "config.json";
  std::ofstream(p) << cfg.dump(2);
  return p;
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "morrey-lab");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config selectors") {
  GridSpec g = grid_from_json(Json{{"n", 1}, {"half_extent", 1.0}, {"cells", 8}});
  CHECK(g.step() == 0.25);
  GridSpec g2 = grid_from_json(Json{{"n", 2}, {"corner", {0.0, 1.0}}, {"cells", 4}, {"h", 0.5}});
  CHECK(g2.box().hi[1] == 3.0);
  CHECK_THROWS_AS(grid_from_json(Json{{"n", 1}, {"cells", 8}}), ConfigError);
  CHECK_THROWS_AS(field_from_json(Json{{"type", "nope"}}, g, 1), ConfigError);
  CHECK_THROWS_AS(weight_from_json(Json{{"type", "constant"}, {"value", 0.0}}, g, 1), ConfigError);

  GridFunction ind = field_from_json(Json{{"type", "indicator"}, {"cube", {{"center", {0.5}}, {"side", 1.0}}}}, g, 1);
  CHECK(ind[0] == 0.0);
  CHECK(ind[5] == 1.0);

  // Block-random fields are the same function on every refinement.
  const Json sel{{"type", "random"}, {"blocks", 4}, {"seed", 17}};
  GridFunction coarse = field_from_json(sel, g, 1);
  GridFunction fine = field_from_json(sel, g.refined(4), 1);
  for (std::size_t k = 0; k < fine.size(); ++k) CHECK(fine[k] == coarse[k / 4]);

  PointSet lac = points_from_json(Json{{"lacunary", {{"nu", 2.0}, {"jmin", -1}, {"jmax", 1}}}});
  CHECK(lac.size() == 7);
  CubeFamily fam = family_from_json(Json{{"kind", "whitney"}, {"omega", {{0.0}}}, {"r1", 0.5}, {"r2", 2.0}}, g);
  CHECK(fam.truncation().step == g.step());
  CHECK(fam.count() > 0);
}

TEST_CASE("trend classification") {
  CHECK(classify_trend({1.0, 1.01, 1.02}, 1.05, 1.2) == Trend::Stable);
  CHECK(classify_trend({1.0, 2.0, 4.0}, 1.05, 1.2) == Trend::Growing);
  CHECK(classify_trend({1.0, 1.3, 1.1 * 1.3}, 1.05, 1.2) == Trend::Indeterminate);
  CHECK(classify_trend({1.0, 1.5, 1.5}, 1.05, 1.2) == Trend::Stable);
  CHECK(classify_trend({1.0, INFINITY, 2.0}, 1.05, 1.2) == Trend::Growing);
  CHECK(classify_trend({0.0, 0.0, 0.0}, 1.05, 1.2) == Trend::Stable);
}

TEST_CASE("eqst on constants and on zero") {
  GridSpec g = GridSpec::centered(1, 1.0, 64);
  PointSet omega({Point{0.0}});
  Report r = verify_eqst(GridFunction(g, 1.0), Weight::constant(g), {2.0, 0.5}, omega, 0.5, 2.0);
  CHECK(r.passed());
  CHECK(r.quantities()["ratio_a"].get<double>() <= std::pow(2.0, 0.25) * (1.0 + 1e-9));
  CHECK(r.parameters()["alpha1"].get<double>() == 2.0);

  Report z = verify_eqst(GridFunction(g, 0.0), Weight::constant(g), {2.0, 0.5}, omega, 0.5, 2.0);
  CHECK(z.passed());
  CHECK(z.quantities()["ratio_a"].get<double>() == 0.0);

  // A window too small for any Whitney cube.
  GridSpec tiny = GridSpec::cubic({-0.5}, 2, 0.5);
  CHECK_THROWS_WITH(verify_eqst(GridFunction(tiny, 1.0), Weight::constant(tiny), {2.0, 0.5},
                                PointSet({Point{0.0}}), 5.0, 6.0),
                    "family truncation produced no cubes");
}

TEST_CASE("redw counts, identity and domination") {
  GridSpec g1 = GridSpec::centered(1, 1.0, 64);
  Report r1 = verify_redw(Cube({0.0}, 2.0), 2, GridFunction(g1, 1.0), Weight::constant(g1), {2.0, 0.5});
  CHECK(r1.quantities()["count_per_annulus"] == 2);
  CHECK(r1.passed());

  GridSpec g2 = GridSpec::centered(2, 1.0, 32);
  Report r2 = verify_redw(Cube({0.0, 0.0}, 2.0), 1, GridFunction(g2, 1.0), Weight::constant(g2), {2.0, 0.5});
  CHECK(r2.quantities()["count_per_annulus"] == 12);
  CHECK(r2.passed());
  CHECK(find_check(r2, "full_domination").passed);
  const double c = r2.quantities()["empirical_constant_annular"].get<double>();
  CHECK(c <= r2.quantities()["series_constant_truncated"].get<double>());

  Rng rng(8);
  GridFunction f(g2);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = rng.uniform(-1.0, 1.0);
  CHECK(verify_redw(Cube({0.1, -0.2}, 1.5), 2, f, Weight::constant(g2), {1.5, 0.3}).passed());

  try {
    verify_redw(Cube({0.0}, 2.0), 40, GridFunction(g1, 1.0), Weight::constant(g1), {2.0, 0.5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("grid step"));
  }
}

TEST_CASE("key property") {
  PointSet lam({Point{0.0}, Point{1.0}, Point{-1.0}, Point{2.0}, Point{-2.0}, Point{4.0}, Point{-4.0}});
  Cube r = Cube::from_corner({1.75}, 0.5);
  CHECK(distance(r, lam) == 0.0);
  CHECK(distance(r, Point{2.0}) == 0.0);

  Report rep = verify_key_property(lam, 2.0, 1000, 3);
  CHECK(rep.passed());
  CHECK(rep.quantities()["violations"] == 0);
  CHECK(verify_key_property(PointSet({Point{3.0}}), 2.0, 50, 1).passed());
  CHECK(verify_key_property(generate_lacunary_1d(1.5, -6, 6), 1.5, 1000, 5).passed());
}

TEST_CASE("connect on zero, on a random field and on a local bump") {
  ConnectSetup s;
  s.base = GridSpec::centered(1, 1.0, 64);
  s.lambda = generate_lacunary_1d(2.0, -6, 6);
  s.w = sampler_from_json(Json{{"type", "constant"}}, 1);

  s.f = sampler_from_json(Json{{"type", "constant"}, {"value", 0.0}}, 1);
  Report zero = verify_connect(s);
  CHECK(zero.passed());
  CHECK(zero.quantities()["stability"] == "skipped");

  s.f = sampler_from_json(Json{{"type", "random"}, {"blocks", 8}, {"seed", 21}}, 1);
  Report rnd = verify_connect(s);
  CHECK(rnd.passed());
  CHECK(find_check(rnd, "stability").passed);
  CHECK(rnd.parameters()["N"] == 8);

  // Supported in the cube centered at 0.5 with diameter 0.25.
  s.f = sampler_from_json(Json{{"type", "indicator"}, {"cube", {{"center", {0.5}}, {"side", 0.25}}}}, 1);
  Report bump = verify_connect(s);
  CHECK(find_check(bump, "easy_direction_per_cube").passed);
  CHECK(find_check(bump, "easy_direction_norm").passed);
}

TEST_CASE("cli exit codes and report files") {
  const fs::path dir = scratch("cli");
  const Json unit{{"grid", {{"n", 1}, {"corner", {0.0}}, {"cells", 16}, {"h", 0.0625}}},
                  {"f", {{"type", "constant"}, {"value", 1.0}}},
                  {"params", {{"p", 2.0}, {"lambda", 0.5}}},
                  {"family", {{"kind", "all_cubes"}}},
                  {"expect", 1.0}};
  const fs::path cfg = write_config(dir, unit);
  CHECK(run_cli({"norm", "-c", cfg.string(), "-o", dir.string(), "-q"}) == kExitOk);
  Json rep = Json::parse(slurp(dir / "norm.json"));
  CHECK(rep["schema"] == kSchemaVersion);
  CHECK(rep["quantities"]["norm"]["value"].get<double>() == 1.0);
  CHECK(rep["passed"] == true);

  Json wrong = unit;
  wrong["expect"] = 2.0;
  CHECK(run_cli({"norm", "-c", write_config(dir, wrong).string(), "-o", dir.string()}) == kExitCheckFailed);

  Json missing = unit;
  missing.erase("family");
  CHECK(run_cli({"norm", "-c", write_config(dir, missing).string(), "-o", dir.string()}) == kExitConfig);
  std::ofstream(dir / "broken.json") << "{\"grid\": ";
  CHECK(run_cli({"norm", "-c", (dir / "broken.json").string()}) == kExitConfig);
  CHECK(run_cli({"norm"}) == kExitConfig);
  CHECK(run_cli({"frobnicate", "-c", cfg.string()}) == kExitConfig);

  Json too_fine{{"grid", {{"n", 1}, {"corner", {0.0}}, {"cells", 16}, {"h", 0.0625}}}, {"N", 20}};
  std::string text;
  CHECK(run_cli({"verify-redw", "-c", write_config(dir, too_fine).string(), "-o", dir.string()}, &text) ==
        kExitRuntime);
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("grid step"));
}

TEST_CASE("cli verify-redw reports the cover count") {
  const fs::path dir = scratch("redw");
  const Json cfg{{"grid", {{"n", 2}, {"half_extent", 1.0}, {"cells", 32}}}, {"N", 1}};
  CHECK(run_cli({"verify-redw", "-c", write_config(dir, cfg).string(), "-o", dir.string(), "-q"}) == kExitOk);
  Json rep = Json::parse(slurp(dir / "verify-redw.json"));
  CHECK(rep["quantities"]["count_per_annulus"] == 12);
  CHECK(fs::exists(dir / "verify-redw_annuli.csv"));
}

TEST_CASE("report directory from the environment") {
  const fs::path dir = scratch("env");
  const fs::path out = dir / "from_env";
  const Json cfg{{"points", {{"lacunary", {{"nu", 2.0}, {"jmin", -2}, {"jmax", 2}}}}}, {"nu", 2.0}, {"samples", 10}};
  const fs::path path = write_config(dir, cfg);
  setenv(kReportDirEnv, out.string().c_str(), 1);
  const int code = run_cli({"verify-kp", "-c", path.string(), "-q"});
  unsetenv(kReportDirEnv);
  CHECK(code == kExitOk);
  CHECK(fs::exists(out / "verify-kp.json"));
}

TEST_CASE("cli runs are byte-identical") {
  const fs::path dir = scratch("det");
  const Json cfg{{"grid", {{"n", 2}, {"half_extent", 1.0}, {"cells", 16}}},
                 {"f", {{"type", "random"}, {"lo", 0.0}, {"hi", 1.0}}},
                 {"w", {{"type", "random"}, {"lo", 0.5}, {"hi", 2.0}}},
                 {"params", {{"p", 1.5}, {"lambda", 0.3}}},
                 {"omega", {{0.0, 0.0}}},
                 {"r1", 0.5},
                 {"r2", 2.0}};
  const fs::path path = write_config(dir, cfg);
  for (const char* run : {"a", "b"})
    REQUIRE(run_cli({"verify-eqst", "-c", path.string(), "-o", (dir / run).string(), "-s", "42", "-q"}) == kExitOk);
  for (const char* f : {"verify-eqst.json", "verify-eqst_witnesses.csv"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  REQUIRE(run_cli({"verify-eqst", "-c", path.string(), "-o", (dir / "c").string(), "-s", "43", "-q"}) == kExitOk);
  CHECK(slurp(dir / "a" / "verify-eqst.json") != slurp(dir / "c" / "verify-eqst.json"));
}
