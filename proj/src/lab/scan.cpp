#include "morrey/lab/scan.hpp"

#include <cmath>

#include "morrey/lacunary.hpp"

namespace morrey::lab {

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Stable: return "stable";
    case Trend::Growing: return "growing";
    case Trend::Indeterminate: return "indeterminate";
  }
  return "?";
}

Trend classify_trend(const std::vector<double>& values, double stable, double growth) {
  if (values.size() < 2) return Trend::Indeterminate;
  for (double v : values)
    if (!std::isfinite(v)) return Trend::Growing;
  bool all_grow = true;
  double last = 1.0;
  for (std::size_t s = 1; s < values.size(); ++s) {
    last = values[s - 1] > 0.0 ? values[s] / values[s - 1] : (values[s] > 0.0 ? INFINITY : 1.0);
    if (!(last >= growth)) all_grow = false;
  }
  if (all_grow) return Trend::Growing;
  if (last <= stable) return Trend::Stable;
  return Trend::Indeterminate;
}

std::vector<ScanWeight> default_scan_weights() {
  std::vector<ScanWeight> out;
  for (double a : {-0.5, 0.0, 0.5, 1.5, 2.0})
    out.push_back({"|x|^" + format_number(a), Json{{"type", "power"}, {"a", a}}, a});
  return out;
}

ScanConfig scan_config_from_json(const Json& j) {
  ScanConfig c;
  c.n = static_cast<std::size_t>(integer_or(j, "n", 1));
  if (c.n < 1 || c.n > kMaxDim) throw ConfigError("scan dimension out of range");
  c.params = params_from_json(j.contains("params") ? j.at("params") : j);
  c.half_extent = number_or(j, "half_extent", c.half_extent);
  c.base_cells = static_cast<std::size_t>(integer_or(j, "base_cells", static_cast<std::int64_t>(c.base_cells)));
  c.levels = static_cast<std::size_t>(integer_or(j, "levels", 3));
  if (c.levels < 3) throw ConfigError("scan needs at least 3 levels");
  if (c.base_cells < 2 || (c.base_cells & (c.base_cells - 1)) != 0)
    throw ConfigError("base_cells must be a power of two");
  c.ladder = string_or(j, "ladder", c.ladder);
  if (c.ladder != "refine" && c.ladder != "window") throw ConfigError("ladder must be 'refine' or 'window'");
  c.nu = number_or(j, "nu", c.nu);
  c.jmin = static_cast<int>(integer_or(j, "jmin", c.jmin));
  c.jmax = static_cast<int>(integer_or(j, "jmax", c.jmax));
  c.stable_threshold = number_or(j, "stable_threshold", c.stable_threshold);
  c.growth_threshold = number_or(j, "growth_threshold", c.growth_threshold);
  c.lattice_bound_above = static_cast<std::size_t>(integer_or(j, "lattice_bound_above", 0));
  if (j.contains("corpus")) {
    const Json& k = j.at("corpus");
    c.corpus.random_fields = static_cast<std::size_t>(integer_or(k, "random_fields", 4));
    c.corpus.random_blocks = static_cast<std::size_t>(integer_or(k, "random_blocks", 8));
    c.corpus.seed = static_cast<std::uint64_t>(integer_or(k, "seed", 1));
    if (k.contains("power_exponents")) c.corpus.power_exponents = k.at("power_exponents").get<std::vector<double>>();
  }
  c.corpus.seed = static_cast<std::uint64_t>(integer_or(j, "seed", static_cast<std::int64_t>(c.corpus.seed)));
  c.corpus.p = c.params.p;
  if (j.contains("weights")) {
    c.weights.clear();
    for (const Json& w : object_at(j, "weights")) {
      ScanWeight sw;
      sw.selector = w.contains("selector") ? w.at("selector") : w;
      if (string_or(sw.selector, "type", "") == "power") sw.a = number_at(sw.selector, "a");
      sw.label = string_or(w, "label", sw.a ? "|x|^" + format_number(*sw.a) : sw.selector.dump());
      c.weights.push_back(std::move(sw));
    }
  }
  return c;
}

namespace {

struct ScaleValues {
  double ap = 0.0, op_lp = 0.0, ax = 0.0, op_morrey = 0.0;
  std::string op_lp_arg, ax_arg, op_morrey_arg, m_provenance;
};

PointSet centers_for(const ScanConfig& c) {
  if (c.n == 1) return generate_lacunary_1d(c.nu, c.jmin, c.jmax);
  return generate_lacunary_sphere(c.nu, c.n, c.jmin, c.jmax).points;
}

// Test cubes [0, t]^n and [-t, t]^n for dyadic t from h to the half extent.
std::vector<Cube> corpus_cubes(const GridSpec& g, double half_extent) {
  std::vector<Cube> out;
  const std::size_t n = g.dim();
  for (double t = g.step(); t <= half_extent * (1.0 + 1e-12); t *= 2.0) {
    out.push_back(Cube::from_corner(Point(n, 0.0), t));
    out.push_back(Cube(Point(n, 0.0), 2.0 * t));
  }
  return out;
}

ScaleValues run_scale(const ScanConfig& c, const ScanWeight& sw, const GridSpec& g, double half_extent) {
  ScaleValues v;
  const Weight w = weight_from_json(sw.selector, g, c.corpus.seed);
  const Box box = g.box();
  const double h = g.step();
  const Corpus corpus = build_corpus(g, w, corpus_cubes(g, half_extent), c.corpus);

  const auto lattices = build_shifted_lattices(c.n, g.corner(), g.cells(0), h);
  const DyadicLattice& lat = lattices.front();
  const CubeFamily dyadic = CubeFamily::dyadic(lat, AnyCube{}, box);
  v.ap = ap_constant(w, c.params.p, dyadic).value;
  const OperatorNormEstimate lp = operator_norm_estimate(
      [&](const GridFunction& f) { return maximal_dyadic(f, lat).values; }, LebesgueSpace{w, c.params.p}, corpus);
  v.op_lp = lp.value;
  v.op_lp_arg = lp.argmax_label;

  double extent = 0.0;
  for (std::size_t i = 0; i < c.n; ++i) extent = std::max(extent, box.extent(i));
  const CubeFamily centered = CubeFamily::centered_at(centers_for(c), box, h, extent);
  const MorreySpace space{w, c.params, centered};
  const AxEstimate ax = ax_constant_estimate(space, centered, corpus);
  v.ax = ax.value;
  v.ax_arg = ax.argmax_label;

  const bool use_bound = c.lattice_bound_above > 0 && g.cells(0) > c.lattice_bound_above;
  const CubeFamily all = CubeFamily::all_cubes(box, h);
  MaximalOperator m = use_bound ? MaximalOperator([&](const GridFunction& f) {
    return three_lattice_bound(f, lattices).values;
  })
                                : MaximalOperator([&](const GridFunction& f) { return maximal_exact(f, all).values; });
  v.m_provenance = use_bound ? "three_lattice_bound" : "maximal_exact";
  const OperatorNormEstimate mo = operator_norm_estimate(m, space, corpus);
  v.op_morrey = mo.value;
  v.op_morrey_arg = mo.argmax_label;
  return v;
}

}  // namespace

Report scan_characterization(const ScanConfig& c) {
  c.params.validate();
  if (c.weights.empty()) throw ConfigError("scan needs at least one weight");
  Report rep("scan");
  Json& par = rep.parameters();
  par["n"] = c.n;
  par["p"] = number(c.params.p);
  par["lambda"] = number(c.params.lambda);
  par["half_extent"] = number(c.half_extent);
  par["base_cells"] = c.base_cells;
  par["levels"] = c.levels;
  par["ladder"] = c.ladder;
  par["nu"] = number(c.nu);
  par["jmin"] = c.jmin;
  par["jmax"] = c.jmax;
  par["stable_threshold"] = number(c.stable_threshold);
  par["growth_threshold"] = number(c.growth_threshold);
  par["lattice_bound_above"] = c.lattice_bound_above;
  par["corpus_seed"] = c.corpus.seed;
  par["random_fields"] = c.corpus.random_fields;
  Json wl = Json::array();
  for (const auto& w : c.weights) wl.push_back(Json{{"label", w.label}, {"selector", w.selector}});
  par["weights"] = wl;

  Table& values = rep.table("values", {"weight", "level", "cells", "h", "half_extent", "ap_constant",
                                       "op_norm_lp", "ax_estimate", "op_norm_morrey", "m_operator",
                                       "op_lp_argmax", "ax_argmax", "op_morrey_argmax"});
  Table& trends = rep.table("trends", {"weight", "label", "ap_trend", "op_lp_trend", "lp_consistent",
                                       "ax_trend", "op_morrey_trend", "morrey_consistent", "error"});
  Json summary = Json::array();

  for (const ScanWeight& sw : c.weights) {
    std::vector<double> ap, opl, ax, opm;
    std::string error;
    try {
      for (std::size_t s = 0; s < c.levels; ++s) {
        const std::size_t cells = c.base_cells << s;
        const double half = c.ladder == "window" ? c.half_extent * static_cast<double>(1u << s) : c.half_extent;
        const GridSpec g = GridSpec::centered(c.n, half, cells);
        const ScaleValues v = run_scale(c, sw, g, half);
        ap.push_back(v.ap);
        opl.push_back(v.op_lp);
        ax.push_back(v.ax);
        opm.push_back(v.op_morrey);
        values.add({sw.label, s, cells, number(g.step()), number(half), number(v.ap), number(v.op_lp),
                    number(v.ax), number(v.op_morrey), v.m_provenance, v.op_lp_arg, v.ax_arg, v.op_morrey_arg});
      }
    } catch (const std::exception& e) {
      error = e.what();
    }
    const std::string label = sw.a ? to_string(classify_power_weight(*sw.a, c.params.p, static_cast<int>(c.n))) : "custom";
    if (!error.empty()) {
      trends.add({sw.label, label, nullptr, nullptr, false, nullptr, nullptr, false, error});
      rep.add(check_flag("scan[" + sw.label + "]", false, error));
      continue;
    }
    const double st = c.stable_threshold, gr = c.growth_threshold;
    const Trend t_ap = classify_trend(ap, st, gr), t_opl = classify_trend(opl, st, gr);
    const Trend t_ax = classify_trend(ax, st, gr), t_opm = classify_trend(opm, st, gr);
    const bool lp_ok = t_ap == t_opl;
    const bool mo_ok = t_ax == t_opm;
    trends.add({sw.label, label, to_string(t_ap), to_string(t_opl), lp_ok, to_string(t_ax), to_string(t_opm), mo_ok,
                ""});
    rep.add(check_flag("lp_consistency[" + sw.label + "]", lp_ok,
                       "ap " + to_string(t_ap) + ", operator " + to_string(t_opl)));
    rep.add(check_flag("morrey_consistency[" + sw.label + "]", mo_ok,
                       "ax " + to_string(t_ax) + ", operator " + to_string(t_opm)));
    if (sw.a) {
      const bool in_range = label == "in_range";
      Check lab = check_flag("ap_label[" + sw.label + "]",
                             t_ap == (in_range ? Trend::Stable : Trend::Growing),
                             label + ", ap " + to_string(t_ap));
      lab.advisory = true;
      rep.add(lab);
    }
    summary.push_back(Json{{"weight", sw.label}, {"label", label}, {"ap", to_string(t_ap)},
                           {"op_lp", to_string(t_opl)}, {"ax", to_string(t_ax)}, {"op_morrey", to_string(t_opm)}});
  }
  rep.quantities()["trends"] = summary;
  return rep;
}

}  // namespace morrey::lab
