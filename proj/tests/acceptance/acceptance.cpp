// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "morrey/annulus.hpp"
#include "morrey/lab/cli.hpp"
#include "morrey/lab/scan.hpp"
#include "morrey/lab/verify.hpp"
#include "morrey/lacunary.hpp"
#include "morrey/maximal.hpp"
#include "morrey/solvers.hpp"
#include "oracles.hpp"

using namespace morrey;
namespace fs = std::filesystem;

namespace {

constexpr double kOracleTol = 1e-12;
constexpr double kVolumeTol = 1e-12;
constexpr double kDistanceTol = 1e-12;
constexpr double kRatioTol = 1e-9;
constexpr double kResidualTol = 1e-12;
constexpr double kOracleBudgetSeconds = 60.0;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome oracle_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240601);
  double worst = 0.0;
  std::size_t cases = 0, bad = 0;
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 1 + c % 2;
    std::array<std::size_t, kMaxDim> cells{1, 1, 1};
    Point corner(n);
    for (std::size_t i = 0; i < n; ++i) {
      cells[i] = 1 + rng.below(256);
      corner[i] = rng.uniform(-2.0, 2.0);
    }
    if (c < 4) cells[0] = 256;
    if (c == 1) cells[1] = 256;
    const GridSpec g(corner, cells, rng.uniform(0.001, 0.1));
    const GridFunction f = oracle::random_field(g, rng, 0.0, 1.0);
    const GridFunction s = oracle::random_field(g, rng, -1.0, 1.0);
    const Weight w = oracle::random_weight(g, rng);
    const double p = rng.uniform(1.0, 3.0);
    GridFunction integrand(g);
    for (std::size_t k = 0; k < g.cell_count(); ++k) integrand[k] = std::pow(std::fabs(s[k]), p) * w[k];
    for (int t = 0; t < 3; ++t) {
      const Cube q = oracle::random_cube(g, rng);
      const double e1 = oracle::rel_err(cube_integral(f, q), static_cast<double>(oracle::naive_integral(f, q)));
      const double e2 =
          oracle::rel_err(weighted_p_mass(s, w, p, q), static_cast<double>(oracle::naive_integral(integrand, q)));
      worst = std::max({worst, e1, e2});
      bad += (e1 > kOracleTol) + (e2 > kOracleTol);
      cases += 2;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << cases << " comparisons over 100 grids, worst rel err " << worst << " (tol " << kOracleTol << "), " << secs
    << " s";
  return {bad == 0 && secs < kOracleBudgetSeconds, d.str()};
}

Outcome domination() {
  std::size_t violations = 0, cells = 0;
  for (std::size_t n : {1, 2}) {
    const std::size_t side = n == 1 ? 128 : 32;
    const GridSpec g = GridSpec::cubic(Point(n, 0.0), side, 1.0 / side);
    const auto lats = build_shifted_lattices(n, g.corner(), side, g.step());
    const CubeFamily all = CubeFamily::all_cubes(g.box(), g.step());
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Rng rng(seed * 7919 + n);
      const GridFunction f = oracle::random_field(g, rng);
      const GridFunction exact = maximal_exact(f, all).values;
      const GridFunction bound = three_lattice_bound(f, lats).values;
      for (std::size_t k = 0; k < g.cell_count(); ++k) violations += bound[k] < exact[k];
      cells += g.cell_count();
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(cells) +
                               " cells (20 seeds, n=1 128 cells, n=2 32^2)"};
}

Outcome annulus() {
  Rng rng(31);
  std::size_t bad = 0, cubes = 0;
  double worst_vol = 0.0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (int big_n = 1; big_n <= 3; ++big_n) {
      Point c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = rng.uniform(-1.0, 1.0);
      const Cube p(c, rng.uniform(0.5, 3.0));
      const auto cover = annulus_cover(p, big_n);
      const std::size_t want_count =
          (std::size_t{1} << n) * (static_cast<std::size_t>(std::pow(big_n + 1, n)) -
                                   static_cast<std::size_t>(std::pow(big_n, n)));
      if (cover.size() != want_count) ++bad;
      double vol = 0.0;
      for (std::size_t a = 0; a < cover.size(); ++a) {
        vol += cover[a].volume();
        if (!annulus_distance_bounds(cover[a], p.center(), big_n, kDistanceTol)) ++bad;
        for (std::size_t b = a + 1; b < cover.size(); ++b) {
          bool apart = false;
          for (std::size_t i = 0; i < n; ++i)
            apart = apart || std::fabs(cover[a].center()[i] - cover[b].center()[i]) >= cover[a].side() * (1 - 1e-12);
          if (!apart) ++bad;
        }
      }
      cubes += cover.size();
      const double want = (std::pow(1.0 + 1.0 / big_n, static_cast<double>(n)) - 1.0) * p.volume();
      const double err = std::fabs(vol - want) / want;
      worst_vol = std::max(worst_vol, err);
      if (err > kVolumeTol) ++bad;
    }
  std::ostringstream d;
  d << cubes << " cubes, N,n in {1,2,3}, worst volume rel err " << worst_vol << ", " << bad << " failures";
  return {bad == 0, d.str()};
}

Outcome subdivision() {
  std::size_t runs = 0, failures = 0;
  double worst = 0.0;
  for (const auto& params : {MorreyParams{2.0, 0.5}, MorreyParams{1.5, 0.3}})
    for (std::size_t n : {1, 2})
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed * 104729 + n * 13 + static_cast<std::uint64_t>(params.p * 10));
        const GridSpec g = GridSpec::centered(n, 1.0, n == 1 ? 64 : 16);
        const GridFunction f = oracle::random_field(g, rng);
        const Weight w = oracle::random_weight(g, rng);
        Point o(n);
        for (std::size_t i = 0; i < n; ++i) o[i] = rng.uniform(-0.5, 0.5);
        const double r1 = rng.uniform(0.2, 1.0);
        const double r2 = r1 + rng.uniform(0.5, 3.0);
        const lab::Report r = lab::verify_eqst(f, w, params, PointSet({o}), r1, r2);
        const double bound = std::pow(2.0, static_cast<double>(n) * (1.0 - params.lambda) / params.p);
        for (const auto& c : r.checks()) {
          if (c.name.rfind("a.", 0) != 0) continue;
          if (!c.passed) ++failures;
          if (c.relation == "<=") worst = std::max(worst, c.measured / bound);
        }
        ++runs;
      }
  std::ostringstream d;
  d << runs << " runs, worst measured/2^{n(1-lambda)/p} = " << worst << " (tol " << kRatioTol << "), " << failures
    << " failed checks";
  return {failures == 0 && worst <= 1.0 + kRatioTol, d.str()};
}

Outcome solver() {
  double worst = 0.0;
  for (double nu : {1.5, 2.0, 4.0})
    for (std::size_t n = 1; n <= 3; ++n) {
      const EquaParams e = solve_epsilon_N(nu, n);
      worst = std::max(worst, std::fabs(equa_lhs(e, n) - 1.0 / nu) * nu);
    }
  const EquaParams e = solve_epsilon_N(2.0, 1);
  const bool exact = e.big_n == 8 && e.epsilon == 0.1;
  std::ostringstream d;
  d << "worst residual * nu = " << worst << " (tol " << kResidualTol << "); nu=2,n=1 -> N=" << e.big_n
    << ", eps=" << e.epsilon;
  return {worst <= kResidualTol && exact, d.str()};
}

Outcome lacunary() {
  bool ok = true;
  std::ostringstream d;
  for (double nu : {1.5, 2.0, 3.0}) {
    const RcondResult r = check_rcond(generate_lacunary_1d(nu, -6, 6), nu);
    ok = ok && r.holds;
    d << "1d nu=" << nu << (r.holds ? " ok" : " FAIL") << "; ";
  }
  for (double nu : {2.0, 3.0}) {
    const SpherePacking sp = generate_lacunary_sphere(nu, 2, -3, 3);
    const bool h = check_rcond(sp.points, sp.effective_nu).holds;
    ok = ok && h;
    d << "sphere n=2 nu=" << nu << " (" << sp.points.size() << " pts, nu'=" << sp.effective_nu << ")"
      << (h ? " ok" : " FAIL") << "; ";
  }
  return {ok, d.str()};
}

Outcome key_property() {
  const lab::Report r = lab::verify_key_property(generate_lacunary_1d(2.0, -6, 6), 2.0, 1000, 2718);
  const auto v = r.quantities()["violations"].get<std::size_t>();
  return {r.passed() && v == 0, std::to_string(v) + " violations in 1000 samples (nu=2, j in [-6,6])"};
}

Outcome restricted_dyadic() {
  std::size_t runs = 0, differing = 0, split_diff = 0;
  Rng rng(4242);
  for (std::size_t n : {1, 2}) {
    for (std::size_t cells : {std::size_t{16}, std::size_t{64}}) {
      if (n == 2 && cells == 64 && runs > 1000) break;
      const GridSpec g = GridSpec::cubic(Point(n, 0.0), cells, 1.0 / cells);
      const auto lats = build_shifted_lattices(n, g.corner(), cells, g.step());
      const GridFunction f = oracle::random_field(g, rng);
      Point o(n);
      for (std::size_t i = 0; i < n; ++i) o[i] = rng.uniform(0.0, 1.0);
      const PointSet omega({o});
      const std::vector<CubePredicate> preds = {AnyCube{}, NearSet{omega, 1.0}, FarSet{omega, 1.0},
                                                WhitneyBand{omega, 0.5, 2.0}};
      for (const auto& lat : lats) {
        for (const auto& pred : preds) {
          const GridFunction fast = maximal_dyadic(f, lat, pred).values;
          const GridFunction ref = maximal_exact(f, CubeFamily::dyadic(lat, pred, g.box())).values;
          for (std::size_t k = 0; k < g.cell_count(); ++k) differing += fast[k] != ref[k];
          ++runs;
        }
        const GridFunction all = maximal_dyadic(f, lat, AnyCube{}).values;
        const GridFunction near = maximal_dyadic(f, lat, NearSet{omega, 1.0}).values;
        const GridFunction far = maximal_dyadic(f, lat, FarSet{omega, 1.0}).values;
        for (std::size_t k = 0; k < g.cell_count(); ++k) split_diff += all[k] != std::max(near[k], far[k]);
      }
    }
  }
  return {differing == 0 && split_diff == 0,
          std::to_string(runs) + " (lattice, predicate, grid) runs up to 64 cells per axis, " +
              std::to_string(differing) + " differing cells, " + std::to_string(split_diff) + " near/far split mismatches"};
}

Outcome scan() {
  lab::ScanConfig cfg;
  const lab::Report r = lab::scan_characterization(cfg);
  std::size_t consistent = 0, total = 0;
  std::string failed;
  for (const auto& c : r.checks()) {
    if (c.advisory) continue;
    ++total;
    if (c.passed)
      ++consistent;
    else
      failed += " " + c.name + "(" + c.note + ")";
  }
  std::ostringstream d;
  d << consistent << "/" << total << " per-weight trend pairs agree (a in {-0.5,0,0.5,1.5,2}, cells "
    << cfg.base_cells << ".." << (cfg.base_cells << (cfg.levels - 1)) << ")";
  for (const auto& t : r.quantities()["trends"])
    d << "; " << t["weight"].get<std::string>() << ": ap/op " << t["ap"].get<std::string>() << "/"
      << t["op_lp"].get<std::string>() << ", ax/op " << t["ax"].get<std::string>() << "/"
      << t["op_morrey"].get<std::string>();
  if (!failed.empty()) d << "; failed:" << failed;
  return {r.passed() && total > 0, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome determinism() {
  const fs::path configs = MORREY_CONFIG_DIR;
  const fs::path base = fs::temp_directory_path() / "morrey_acceptance_determinism";
  fs::remove_all(base);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"norm", "norm_unit"},          {"maximal", "maximal_domination"}, {"maximal", "maximal_restricted"},
      {"ap-constant", "ap_power"},    {"ax-estimate", "ax_power"},       {"verify-eqst", "verify_eqst"},
      {"verify-redw", "verify_redw"}, {"verify-kp", "verify_kp"},        {"verify-connect", "verify_connect"},
      {"scan", "scan"},               {"lattices", "lattices"}};
  std::size_t files = 0, mismatches = 0, bad_exit = 0;
  for (const auto& [sub, name] : runs) {
    for (const char* rep : {"a", "b"}) {
      std::ostringstream out, err;
      const std::vector<std::string> args = {"morrey-lab", sub, "-c", (configs / (name + ".json")).string(),
                                             "-o", (base / rep).string(), "--stem", name, "-s", "7", "-q"};
      if (lab::cli_main(args, out, err) != lab::kExitOk) ++bad_exit;
    }
  }
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    ++files;
    const fs::path other = base / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++mismatches;
  }
  std::size_t files_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(base / "b")) ++files_b;
  return {mismatches == 0 && bad_exit == 0 && files == files_b && files > 0,
          std::to_string(runs.size()) + " subcommand configs run twice, " + std::to_string(files) + " files, " +
              std::to_string(mismatches) + " differing, " + std::to_string(bad_exit) + " nonzero exits"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1  oracle exactness (cube_integral, weighted_p_mass)", oracle_exactness},
      {"C2  three-lattice domination of the exact maximal function", domination},
      {"C3  annulus cover count, volume and distance bounds", annulus},
      {"C4  one-step subdivision constant 2^{n(1-lambda)/p}", subdivision},
      {"C5  epsilon-N solver residual", solver},
      {"C6  lacunary generators pass the pairwise condition", lacunary},
      {"C7  key distance property of centered cubes", key_property},
      {"C8  restricted dyadic maximal equals exact over the same cubes", restricted_dyadic},
      {"C9  characterization scan trend consistency", scan},
      {"C10 byte-identical CLI reports", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("[%s] %s: %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
