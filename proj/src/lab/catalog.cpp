#include "morrey/lab/catalog.hpp"

#include <cmath>

#include "morrey/grid_io.hpp"
#include "morrey/lab/report.hpp"
#include "morrey/lacunary.hpp"
#include "morrey/muckenhoupt.hpp"
#include "morrey/rng.hpp"

namespace morrey::lab {

const Json& object_at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number_at(const Json& j, const char* key) {
  const Json& v = object_at(j, key);
  if (!v.is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.is_object() && j.contains(key) ? number_at(j, key) : fallback;
}

std::int64_t integer_at(const Json& j, const char* key) {
  const Json& v = object_at(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::int64_t integer_or(const Json& j, const char* key, std::int64_t fallback) {
  return j.is_object() && j.contains(key) ? integer_at(j, key) : fallback;
}

std::string string_or(const Json& j, const char* key, const std::string& fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ConfigError(std::string("key '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

namespace {

template <class Fn>
auto rethrow_as_config(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

std::size_t positive_size(const Json& j, const char* key) {
  const std::int64_t v = integer_at(j, key);
  if (v < 1) throw ConfigError(std::string("key '") + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

}  // namespace

GridSpec grid_from_json(const Json& j) {
  return rethrow_as_config("grid", [&] {
    if (j.contains("file")) return load_grid(j.at("file").get<std::string>()).spec();
    const std::size_t n = positive_size(j, "n");
    const std::size_t cells = positive_size(j, "cells");
    if (j.contains("half_extent")) return GridSpec::centered(n, number_at(j, "half_extent"), cells);
    const Point corner = decode_point(object_at(j, "corner"));
    if (corner.dim() != n) throw ConfigError("grid corner does not have n coordinates");
    return GridSpec::cubic(corner, cells, number_at(j, "h"));
  });
}

GridFunction indicator(const GridSpec& g, const Cube& q) {
  return GridFunction::sample(g, [&](const Point& x) { return q.contains(x) ? 1.0 : 0.0; });
}

GridFunction ramp(const GridSpec& g, const Point& direction, double offset) {
  return GridFunction::sample(g, [&](const Point& x) {
    double v = offset;
    for (std::size_t i = 0; i < x.dim(); ++i) v += direction[i] * x[i];
    return v;
  });
}

GridFunction block_random(const GridSpec& g, std::size_t blocks, std::uint64_t seed, double lo, double hi) {
  if (blocks == 0) throw Error("random field needs at least one block");
  const std::size_t n = g.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= blocks;
  Rng rng(seed);
  std::vector<double> coarse(total);
  for (double& v : coarse) v = rng.uniform(lo, hi);
  const Box box = g.box();
  return GridFunction::sample(g, [&](const Point& x) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = (x[i] - box.lo[i]) / box.extent(i) * static_cast<double>(blocks);
      const auto b = std::min(blocks - 1, static_cast<std::size_t>(std::max(0.0, std::floor(t))));
      flat = flat * blocks + b;
    }
    return coarse[flat];
  });
}

GridFunction cell_random(const GridSpec& g, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  GridFunction f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = rng.uniform(lo, hi);
  return f;
}

GridFunction field_from_json(const Json& sel, const GridSpec& g, std::uint64_t seed) {
  return rethrow_as_config("field selector", [&]() -> GridFunction {
    const std::string type = string_or(sel, "type", "");
    if (type == "constant") return GridFunction(g, number_or(sel, "value", 1.0));
    if (type == "power") {
      const Point c = sel.contains("center") ? decode_point(sel.at("center")) : Point(g.dim(), 0.0);
      return sample_power_weight(number_at(sel, "a"), c, g).function();
    }
    if (type == "indicator") return indicator(g, decode_cube(object_at(sel, "cube")));
    if (type == "ramp") {
      const Point d = sel.contains("direction") ? decode_point(sel.at("direction")) : Point(g.dim(), 1.0);
      if (d.dim() != g.dim()) throw ConfigError("ramp direction does not match the grid dimension");
      return ramp(g, d, number_or(sel, "offset", 0.0));
    }
    if (type == "random") {
      const auto s = static_cast<std::uint64_t>(integer_or(sel, "seed", static_cast<std::int64_t>(seed)));
      const double lo = number_or(sel, "lo", 0.0);
      const double hi = number_or(sel, "hi", 1.0);
      if (sel.contains("blocks")) return block_random(g, positive_size(sel, "blocks"), s, lo, hi);
      return cell_random(g, s, lo, hi);
    }
    if (type == "file") {
      GridFunction f = load_grid(object_at(sel, "path").get<std::string>());
      if (!(f.spec() == g)) throw ConfigError("grid file does not match the configured grid");
      return f;
    }
    throw ConfigError("unknown field type '" + type + "'");
  });
}

Weight weight_from_json(const Json& sel, const GridSpec& g, std::uint64_t seed) {
  return rethrow_as_config("weight selector", [&] { return Weight(field_from_json(sel, g, seed)); });
}

FieldSampler sampler_from_json(const Json& sel, std::uint64_t seed) {
  if (!sel.is_object()) throw ConfigError("field selector must be an object");
  return [sel, seed](const GridSpec& g) { return field_from_json(sel, g, seed); };
}

PointSet points_from_json(const Json& j) {
  return rethrow_as_config("point set", [&] {
    if (j.is_array()) return decode_point_set(j);
    if (j.contains("lacunary")) {
      const Json& l = j.at("lacunary");
      return generate_lacunary_1d(number_at(l, "nu"), static_cast<int>(integer_at(l, "jmin")),
                                  static_cast<int>(integer_at(l, "jmax")));
    }
    if (j.contains("sphere")) {
      const Json& s = j.at("sphere");
      return generate_lacunary_sphere(number_at(s, "nu"), positive_size(s, "n"),
                                      static_cast<int>(integer_at(s, "jmin")),
                                      static_cast<int>(integer_at(s, "jmax")),
                                      static_cast<std::size_t>(integer_or(s, "max_per_sphere", 0)))
          .points;
    }
    throw ConfigError("point set must be an array or a lacunary/sphere generator");
  });
}

CubeFamily family_from_json(const Json& j, const GridSpec& g) {
  return rethrow_as_config("family", [&] {
    if (j.contains("truncation")) return decode_family(j);
    const std::string kind = string_or(j, "kind", "");
    const Box box = g.box();
    const double h = g.step();
    const double min_side = number_or(j, "min_side", 0.0);
    const double max_side = j.contains("max_side") && !j.at("max_side").is_null()
                                ? number_at(j, "max_side")
                                : std::numeric_limits<double>::infinity();
    if (kind == "all_cubes") return CubeFamily::all_cubes(box, h, min_side, max_side);
    if (kind == "whitney")
      return CubeFamily::whitney(points_from_json(object_at(j, "omega")), number_at(j, "r1"),
                                 number_at(j, "r2"), box, h, min_side, max_side);
    if (kind == "centered_at") {
      double extent = box.extent(0);
      for (std::size_t i = 1; i < g.dim(); ++i) extent = std::max(extent, box.extent(i));
      return CubeFamily::centered_at(points_from_json(object_at(j, "centers")), box,
                                     number_or(j, "min_side", h), number_or(j, "max_side", 2.0 * extent),
                                     static_cast<int>(integer_or(j, "rungs_per_octave", 2)));
    }
    if (kind == "dyadic") {
      std::size_t cells = g.cells(0);
      for (std::size_t i = 1; i < g.dim(); ++i)
        if (g.cells(i) != cells) throw ConfigError("dyadic family needs a cubic grid");
      const auto lats = build_shifted_lattices(g.dim(), g.corner(), cells, h);
      std::size_t index = 0;
      if (j.contains("shift")) {
        const Point t = decode_point(j.at("shift"));
        for (std::size_t i = 0; i < g.dim(); ++i) index = index * 3 + static_cast<std::size_t>(t[i]);
        if (index >= lats.size()) throw ConfigError("lattice shift out of range");
      }
      const CubePredicate pred = j.contains("predicate") ? decode_predicate(j.at("predicate")) : AnyCube{};
      return CubeFamily::dyadic(lats[index], pred, box);
    }
    throw ConfigError("unknown family kind '" + kind + "'");
  });
}

MorreyParams params_from_json(const Json& j) {
  MorreyParams p{number_or(j, "p", 2.0), number_or(j, "lambda", 0.5)};
  rethrow_as_config("params", [&] {
    p.validate();
    return 0;
  });
  return p;
}

Corpus build_corpus(const GridSpec& g, const Weight& w, const std::vector<Cube>& cubes,
                    const CorpusOptions& opt) {
  Corpus c;
  auto label = [](const char* kind, const Cube& q) {
    return std::string(kind) + "@" + q.center().to_string() + "/" + format_number(q.side());
  };
  GridFunction sigma;
  if (opt.dual_extremals) sigma = dual_weight(w, opt.p);
  for (const Cube& q : cubes) {
    GridFunction chi = indicator(g, q);
    if (opt.indicators) c.push_back({label("chi", q), chi});
    if (opt.dual_extremals) {
      for (std::size_t k = 0; k < chi.size(); ++k) chi[k] *= sigma[k];
      c.push_back({label("sigma_chi", q), std::move(chi)});
    }
  }
  if (opt.ramps) {
    // Both ramps are nonnegative on the grid box.
    const Box b = g.box();
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      lo += b.lo[i];
      hi += b.hi[i];
    }
    c.push_back({"ramp_up", ramp(g, Point(g.dim(), 1.0), -lo)});
    c.push_back({"ramp_down", ramp(g, Point(g.dim(), -1.0), hi)});
  }
  if (!opt.power_exponents.empty()) {
    const Box b = g.box();
    for (double e : opt.power_exponents) {
      GridFunction pw = sample_power_weight(-e, Point(g.dim(), 0.0), g).function();
      GridFunction half = pw;
      for (std::size_t k = 0; k < half.size(); ++k) {
        const Point x = g.cell_center(k);
        bool pos = b.contains(x);
        for (std::size_t i = 0; i < g.dim(); ++i) pos = pos && x[i] > 0.0;
        if (!pos) half[k] = 0.0;
      }
      c.push_back({"power#" + format_number(e), std::move(pw)});
      c.push_back({"power_positive#" + format_number(e), std::move(half)});
    }
  }
  for (std::size_t r = 0; r < opt.random_fields; ++r) {
    const std::uint64_t s = opt.seed + r;
    c.push_back({"random_blocks#" + std::to_string(s), block_random(g, opt.random_blocks, s, 0.0, 1.0)});
  }
  return c;
}

}  // namespace morrey::lab
