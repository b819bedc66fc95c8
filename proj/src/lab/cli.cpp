#include "morrey/lab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "morrey/grid_io.hpp"
#include "morrey/lab/scan.hpp"
#include "morrey/lab/verify.hpp"

namespace morrey::lab {

std::vector<std::string> subcommands() {
  return {"norm",        "maximal",   "ap-constant",    "ax-estimate", "verify-eqst",
          "verify-redw", "verify-kp", "verify-connect", "scan",        "lattices"};
}

namespace {

const Json kOne = Json{{"type", "constant"}, {"value", 1.0}};

std::uint64_t seed_of(const Json& cfg) { return static_cast<std::uint64_t>(integer_or(cfg, "seed", 1)); }

const Json& selector(const Json& cfg, const char* key) { return cfg.contains(key) ? cfg.at(key) : kOne; }

struct Setup {
  GridSpec grid;
  GridFunction f;
  Weight w;
};

Setup load_setup(const Json& cfg) {
  const GridSpec g = grid_from_json(object_at(cfg, "grid"));
  return {g, field_from_json(selector(cfg, "f"), g, seed_of(cfg)),
          weight_from_json(selector(cfg, "w"), g, seed_of(cfg) + 1)};
}

void echo(Report& r, const Json& cfg) {
  r.parameters()["config"] = cfg;
}

void expect_check(Report& r, const Json& cfg, double measured) {
  if (!cfg.contains("expect")) return;
  r.add(check_eq("expected_value", measured, number_at(cfg, "expect"), number_or(cfg, "tolerance", 1e-12)));
}

Report run_norm(const Json& cfg) {
  const Setup s = load_setup(cfg);
  const MorreyParams params = params_from_json(cfg.contains("params") ? cfg.at("params") : cfg);
  const CubeFamily fam = family_from_json(object_at(cfg, "family"), s.grid);
  Report r("norm");
  echo(r, cfg);
  r.parameters()["grid"] = encode(s.grid);
  r.parameters()["family"] = encode(fam);
  const NormResult nr = morrey_norm(s.f, s.w, params, fam);
  r.quantities()["norm"] = encode(nr);
  expect_check(r, cfg, nr.value);
  return r;
}

DyadicLattice lattice_from(const Json& cfg, const GridSpec& g, std::vector<DyadicLattice>& all) {
  for (std::size_t i = 1; i < g.dim(); ++i)
    if (g.cells(i) != g.cells(0)) throw ConfigError("lattices need a cubic grid");
  all = build_shifted_lattices(g.dim(), g.corner(), g.cells(0), g.step());
  std::size_t index = static_cast<std::size_t>(integer_or(cfg, "lattice", 0));
  if (index >= all.size()) throw ConfigError("lattice index out of range");
  return all[index];
}

Report run_maximal(const Json& cfg) {
  const Setup s = load_setup(cfg);
  const std::string mode = string_or(cfg, "mode", "exact");
  const bool compare = cfg.contains("compare") && cfg.at("compare").get<bool>();
  Report r("maximal");
  echo(r, cfg);
  r.parameters()["grid"] = encode(s.grid);
  r.parameters()["mode"] = mode;
  MaximalField field;
  std::vector<DyadicLattice> lats;
  if (mode == "exact") {
    const CubeFamily fam = family_from_json(object_at(cfg, "family"), s.grid);
    r.parameters()["family"] = encode(fam);
    field = maximal_exact(s.f, fam);
    if (compare) {
      const MaximalField brute = maximal_brute_force(s.f, fam);
      std::size_t diff = 0;
      for (std::size_t k = 0; k < field.values.size(); ++k) diff += field.values[k] != brute.values[k];
      r.add(check_eq("matches_brute_force", static_cast<double>(diff), 0.0, 0.0, "cells differing"));
    }
  } else if (mode == "dyadic") {
    const DyadicLattice lat = lattice_from(cfg, s.grid, lats);
    const CubePredicate pred = cfg.contains("predicate") ? decode_predicate(cfg.at("predicate")) : AnyCube{};
    r.parameters()["lattice"] = encode(lat);
    r.parameters()["predicate"] = encode(pred);
    field = maximal_dyadic(s.f, lat, pred);
    if (compare) {
      const MaximalField ex = maximal_exact(s.f, CubeFamily::dyadic(lat, pred, s.grid.box()));
      std::size_t diff = 0;
      for (std::size_t k = 0; k < field.values.size(); ++k) diff += field.values[k] != ex.values[k];
      r.add(check_eq("matches_exact_over_same_cubes", static_cast<double>(diff), 0.0, 0.0, "cells differing"));
    }
  } else if (mode == "three_lattice") {
    lattice_from(cfg, s.grid, lats);
    field = three_lattice_bound(s.f, lats);
    if (compare) {
      const MaximalField ex = maximal_exact(s.f, CubeFamily::all_cubes(s.grid.box(), s.grid.step()));
      std::size_t below = 0;
      for (std::size_t k = 0; k < field.values.size(); ++k) below += field.values[k] < ex.values[k];
      r.add(check_eq("dominates_exact", static_cast<double>(below), 0.0, 0.0, "cells where the bound is smaller"));
    }
  } else {
    throw ConfigError("unknown maximal mode '" + mode + "'");
  }
  double mx = 0.0;
  long double sum = 0.0L;
  Table& t = r.table("field", {"cell", "center", "value"});
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    mx = std::max(mx, field.values[k]);
    sum += field.values[k];
    t.add({k, s.grid.cell_center(k).to_string(), number(field.values[k])});
  }
  r.quantities()["provenance"] = field.provenance;
  r.quantities()["max"] = number(mx);
  r.quantities()["mean"] = number(static_cast<double>(sum / field.values.size()));
  if (cfg.contains("save_field")) save_grid(cfg.at("save_field").get<std::string>(), field.values);
  return r;
}

Report run_ap(const Json& cfg) {
  const GridSpec g = grid_from_json(object_at(cfg, "grid"));
  const Weight w = weight_from_json(selector(cfg, "w"), g, seed_of(cfg) + 1);
  const double p = number_or(cfg, "p", 2.0);
  const CubeFamily fam = family_from_json(object_at(cfg, "family"), g);
  Report r("ap-constant");
  echo(r, cfg);
  r.parameters()["grid"] = encode(g);
  r.parameters()["family"] = encode(fam);
  const bool terms = cfg.contains("keep_terms") && cfg.at("keep_terms").get<bool>();
  const ApReport ap = ap_constant(w, p, fam, terms);
  r.quantities()["ap"] = encode(ap);
  if (terms) {
    Table& t = r.table("terms", {"center", "side", "term"});
    for (const auto& [q, v] : ap.terms) t.add({q.center().to_string(), number(q.side()), number(v)});
  }
  if (cfg.contains("a")) {
    const double a = number_at(cfg, "a");
    r.quantities()["label"] = to_string(classify_power_weight(a, p, static_cast<int>(g.dim())));
  }
  expect_check(r, cfg, ap.value);
  return r;
}

std::vector<Cube> test_cubes(const Json& cfg, const GridSpec& g) {
  std::vector<Cube> cubes;
  if (cfg.contains("cubes")) {
    for (const Json& c : cfg.at("cubes")) cubes.push_back(decode_cube(c));
    return cubes;
  }
  const Box b = g.box();
  Point mid(g.dim());
  double half = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    mid[i] = 0.5 * (b.lo[i] + b.hi[i]);
    half = std::max(half, 0.5 * b.extent(i));
  }
  for (double t = g.step(); t <= half * (1.0 + 1e-12); t *= 2.0) {
    cubes.push_back(Cube::from_corner(mid, t));
    cubes.push_back(Cube(mid, 2.0 * t));
  }
  return cubes;
}

CorpusOptions corpus_options(const Json& cfg, double p, std::uint64_t seed) {
  CorpusOptions o;
  o.p = p;
  o.seed = seed;
  if (!cfg.contains("corpus")) return o;
  const Json& c = cfg.at("corpus");
  o.random_fields = static_cast<std::size_t>(integer_or(c, "random_fields", 4));
  o.random_blocks = static_cast<std::size_t>(integer_or(c, "random_blocks", 8));
  o.dual_extremals = !c.contains("dual_extremals") || c.at("dual_extremals").get<bool>();
  if (c.contains("power_exponents")) o.power_exponents = c.at("power_exponents").get<std::vector<double>>();
  return o;
}

Report run_ax(const Json& cfg) {
  const GridSpec g = grid_from_json(object_at(cfg, "grid"));
  const Weight w = weight_from_json(selector(cfg, "w"), g, seed_of(cfg) + 1);
  const CubeFamily fam = family_from_json(object_at(cfg, "family"), g);
  const std::string space_kind = string_or(cfg, "space", "morrey");
  NormSpec space = LebesgueSpace{w, number_or(cfg, "p", 2.0)};
  if (space_kind == "morrey") {
    const MorreyParams params = params_from_json(cfg.contains("params") ? cfg.at("params") : cfg);
    const CubeFamily sfam = cfg.contains("space_family") ? family_from_json(cfg.at("space_family"), g) : fam;
    space = MorreySpace{w, params, sfam};
  } else if (space_kind != "lebesgue") {
    throw ConfigError("space must be 'morrey' or 'lebesgue'");
  }
  const Corpus corpus = build_corpus(g, w, test_cubes(cfg, g), corpus_options(cfg, exponent_of(space), seed_of(cfg)));
  Report r("ax-estimate");
  echo(r, cfg);
  r.parameters()["grid"] = encode(g);
  r.parameters()["family"] = encode(fam);
  r.parameters()["space"] = describe(space);
  r.parameters()["corpus_size"] = corpus.size();
  const AxEstimate ax = ax_constant_estimate(space, fam, corpus);
  r.quantities()["ax"] = encode(ax);
  Table& t = r.table("corpus", {"label"});
  for (const auto& e : corpus) t.add({e.label});
  return r;
}

MorreyParams params_of(const Json& cfg) { return params_from_json(cfg.contains("params") ? cfg.at("params") : cfg); }

Report run_eqst(const Json& cfg) {
  const Setup s = load_setup(cfg);
  Report r = verify_eqst(s.f, s.w, params_of(cfg), points_from_json(object_at(cfg, "omega")),
                         number_at(cfg, "r1"), number_at(cfg, "r2"));
  echo(r, cfg);
  return r;
}

Report run_redw(const Json& cfg) {
  const Setup s = load_setup(cfg);
  Cube q;
  if (cfg.contains("cube")) {
    q = decode_cube(cfg.at("cube"));
  } else {
    const Box b = s.grid.box();
    Point c(s.grid.dim());
    double side = b.extent(0);
    for (std::size_t i = 0; i < c.dim(); ++i) {
      c[i] = 0.5 * (b.lo[i] + b.hi[i]);
      side = std::min(side, b.extent(i));
    }
    q = Cube(c, side);
  }
  Report r = verify_redw(q, static_cast<int>(integer_at(cfg, "N")), s.f, s.w, params_of(cfg));
  echo(r, cfg);
  return r;
}

Report run_kp(const Json& cfg) {
  Report r = verify_key_property(points_from_json(object_at(cfg, "points")), number_at(cfg, "nu"),
                                 static_cast<std::size_t>(integer_or(cfg, "samples", 1000)), seed_of(cfg));
  echo(r, cfg);
  return r;
}

Report run_connect(const Json& cfg) {
  ConnectSetup s;
  s.base = grid_from_json(object_at(cfg, "grid"));
  s.f = sampler_from_json(selector(cfg, "f"), seed_of(cfg));
  s.w = sampler_from_json(selector(cfg, "w"), seed_of(cfg) + 1);
  s.levels = static_cast<std::size_t>(integer_or(cfg, "levels", 3));
  s.params = params_of(cfg);
  s.lambda = points_from_json(object_at(cfg, "points"));
  s.nu = number_at(cfg, "nu");
  if (cfg.contains("N") || cfg.contains("epsilon"))
    s.equa = EquaParams{number_at(cfg, "epsilon"), static_cast<int>(integer_at(cfg, "N"))};
  Report r = verify_connect(s);
  echo(r, cfg);
  return r;
}

Report run_scan(const Json& cfg) {
  Report r = scan_characterization(scan_config_from_json(cfg));
  echo(r, cfg);
  return r;
}

Report run_lattices(const Json& cfg) {
  const GridSpec g = grid_from_json(object_at(cfg, "grid"));
  std::vector<DyadicLattice> lats;
  lattice_from(cfg, g, lats);
  Report r("lattices");
  echo(r, cfg);
  r.parameters()["grid"] = encode(g);
  Table& t = r.table("lattices", {"index", "shift", "min_level", "max_level", "base_side"});
  for (std::size_t i = 0; i < lats.size(); ++i) {
    Json shift = Json::array();
    for (std::size_t a = 0; a < g.dim(); ++a) shift.push_back(lats[i].shift_thirds()[a]);
    t.add({i, shift.dump(), lats[i].min_level(), lats[i].max_level(), number(lats[i].base_side())});
  }
  double worst = 0.0;
  std::size_t cubes = 0, missing = 0;
  Cube worst_cube;
  CubeFamily::all_cubes(g.box(), g.step()).for_each([&](const Cube& q) {
    ++cubes;
    const auto c = smallest_containing(lats, q);
    if (!c) {
      ++missing;
      return;
    }
    if (c->side_ratio > worst) {
      worst = c->side_ratio;
      worst_cube = q;
    }
  });
  r.quantities()["lattice_count"] = lats.size();
  r.quantities()["cubes_checked"] = cubes;
  r.quantities()["worst_side_ratio"] = number(worst);
  r.quantities()["worst_cube"] = encode(worst_cube);
  r.add(check_eq("every_cube_contained", static_cast<double>(missing), 0.0, 0.0));
  r.add(check_le("containment_side_ratio", worst, 6.0, 0.0, "smallest containing lattice cube has side <= 6 l_Q"));
  return r;
}

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

}  // namespace

Report run_experiment(const std::string& sub, const Json& cfg) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (sub == "norm") return run_norm(cfg);
    if (sub == "maximal") return run_maximal(cfg);
    if (sub == "ap-constant") return run_ap(cfg);
    if (sub == "ax-estimate") return run_ax(cfg);
    if (sub == "verify-eqst") return run_eqst(cfg);
    if (sub == "verify-redw") return run_redw(cfg);
    if (sub == "verify-kp") return run_kp(cfg);
    if (sub == "verify-connect") return run_connect(cfg);
    if (sub == "scan") return run_scan(cfg);
    if (sub == "lattices") return run_lattices(cfg);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  throw ConfigError("unknown subcommand '" + sub + "'");
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Morrey space laboratory", "morrey-lab"};
  std::string sub, config_path, report_dir, stem;
  std::optional<std::int64_t> seed;
  bool quiet = false;
  app.add_option("subcommand", sub, "Experiment to run")->required()->check(CLI::IsMember(subcommands()));
  app.add_option("-c,--config", config_path, "JSON config file")->required();
  app.add_option("-o,--report-dir", report_dir, "Report directory (overrides config and environment)");
  app.add_option("-s,--seed", seed, "Seed (overrides config)");
  app.add_option("--stem", stem, "Report file stem (default: subcommand)");
  app.add_flag("-q,--quiet", quiet, "Only print failures");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "morrey-lab: " << e.what() << "\n" << app.help();
    return kExitConfig;
  }

  Json cfg;
  Report report("none");
  try {
    cfg = read_config(config_path);
    if (seed) cfg["seed"] = *seed;
    const auto t0 = std::chrono::steady_clock::now();
    report = run_experiment(sub, cfg);
    if (cfg.contains("record_runtime") && cfg.at("record_runtime").get<bool>())
      report.set_runtime(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  } catch (const ConfigError& e) {
    err << "morrey-lab: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "morrey-lab: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "morrey-lab: " << e.what() << "\n";
    return kExitRuntime;
  }

  std::string dir = ".";
  if (cfg.contains("output") && cfg.at("output").contains("dir")) dir = cfg.at("output").at("dir").get<std::string>();
  if (const char* env = std::getenv(kReportDirEnv); env && *env) dir = env;
  if (!report_dir.empty()) dir = report_dir;
  if (stem.empty()) stem = cfg.contains("output") ? string_or(cfg.at("output"), "stem", sub) : sub;

  try {
    for (const auto& p : write_report(report, dir, stem))
      if (!quiet) out << "wrote " << p.string() << "\n";
  } catch (const std::exception& e) {
    err << "morrey-lab: " << e.what() << "\n";
    return kExitRuntime;
  }
  for (const Check& c : report.checks()) {
    if (quiet && (c.passed || c.advisory)) continue;
    out << (c.passed ? "PASS " : (c.advisory ? "NOTE " : "FAIL ")) << c.name << ": " << format_number(c.measured)
        << " " << c.relation << " " << format_number(c.bound);
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return cli_main(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace morrey::lab
