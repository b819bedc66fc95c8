#include "morrey/serialize.hpp"

#include <cmath>
#include <limits>

#include "morrey/detail/overloaded.hpp"
#include "morrey/error.hpp"

namespace morrey {

using detail::Overloaded;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw Error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Json encode_bound(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double decode_bound(const Json& j, const char* key, double fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return number(j, key);
}

}  // namespace

Json encode(const Point& x) {
  Json a = Json::array();
  for (double v : x) a.push_back(v);
  return a;
}

Point decode_point(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim)
    throw Error("point must be an array of 1 to 3 numbers");
  Point x(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error("point coordinates must be numbers");
    x[i] = j[i].get<double>();
  }
  return x;
}

Json encode(const Box& b) { return Json{{"lo", encode(b.lo)}, {"hi", encode(b.hi)}}; }

Box decode_box(const Json& j) {
  Box b{decode_point(field(j, "lo")), decode_point(field(j, "hi"))};
  if (b.lo.dim() != b.hi.dim()) throw Error("box corners differ in dimension");
  return b;
}

Json encode(const Cube& q) { return Json{{"center", encode(q.center())}, {"side", q.side()}}; }

Cube decode_cube(const Json& j) { return Cube(decode_point(field(j, "center")), number(j, "side")); }

Json encode(const PointSet& s) {
  Json a = Json::array();
  for (const Point& x : s) a.push_back(encode(x));
  return a;
}

PointSet decode_point_set(const Json& j) {
  if (!j.is_array()) throw Error("point set must be an array of points");
  std::vector<Point> pts;
  for (const Json& x : j) pts.push_back(decode_point(x));
  return PointSet(std::move(pts));
}

Json encode(const DyadicLattice& lattice) {
  Json shift = Json::array();
  for (std::size_t i = 0; i < lattice.dim(); ++i) shift.push_back(lattice.shift_thirds()[i]);
  return Json{{"origin", encode(lattice.origin())},
              {"base_side", lattice.base_side()},
              {"shift_thirds", shift},
              {"min_level", lattice.min_level()},
              {"max_level", lattice.max_level()}};
}

DyadicLattice decode_lattice(const Json& j) {
  const Point origin = decode_point(field(j, "origin"));
  std::array<int, kMaxDim> shift{};
  if (j.contains("shift_thirds")) {
    const Json& s = j.at("shift_thirds");
    if (!s.is_array() || s.size() != origin.dim()) throw Error("shift_thirds must match the dimension");
    for (std::size_t i = 0; i < s.size(); ++i) shift[i] = s[i].get<int>();
  }
  return DyadicLattice(origin, number(j, "base_side"), shift,
                       static_cast<int>(number(j, "min_level")),
                       static_cast<int>(number(j, "max_level")));
}

Json encode(const CubePredicate& pred) {
  return std::visit(
      Overloaded{
          [](const AnyCube&) { return Json{{"kind", "any"}}; },
          [](const NearSet& p) {
            return Json{{"kind", "near"}, {"omega", encode(p.omega)}, {"alpha", p.alpha}};
          },
          [](const FarSet& p) {
            return Json{{"kind", "far"}, {"omega", encode(p.omega)}, {"alpha", p.alpha}};
          },
          [](const WhitneyBand& p) {
            return Json{{"kind", "whitney"}, {"omega", encode(p.omega)}, {"r1", p.r1}, {"r2", p.r2}};
          },
          [](const CustomPredicate& p) -> Json {
            throw Error("custom predicate '" + p.label + "' cannot be serialized");
          },
      },
      pred);
}

CubePredicate decode_predicate(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "any") return AnyCube{};
  if (kind == "near") return NearSet{decode_point_set(field(j, "omega")), number(j, "alpha")};
  if (kind == "far") return FarSet{decode_point_set(field(j, "omega")), number(j, "alpha")};
  if (kind == "whitney")
    return WhitneyBand{decode_point_set(field(j, "omega")), number(j, "r1"), number(j, "r2")};
  throw Error("unknown predicate kind '" + kind + "'");
}

Json encode(const CubeFamily& family) {
  const Truncation& t = family.truncation();
  Json trunc{{"window", encode(t.window)},
             {"step", t.step},
             {"min_side", t.min_side},
             {"max_side", encode_bound(t.max_side)}};
  Json j{{"kind", family.kind_name()}};
  std::visit(Overloaded{
                 [](const AllCubes&) {},
                 [&](const CenteredAt& c) {
                   j["centers"] = encode(c.centers);
                   j["rungs_per_octave"] = c.rungs_per_octave;
                 },
                 [&](const Whitney& w) {
                   j["omega"] = encode(w.omega);
                   j["r1"] = w.r1;
                   j["r2"] = w.r2;
                 },
                 [&](const DyadicRestricted& d) {
                   j["lattice"] = encode(d.lattice);
                   j["predicate"] = encode(d.predicate);
                 },
             },
             family.kind());
  j["truncation"] = trunc;
  return j;
}

CubeFamily decode_family(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const Json& tj = field(j, "truncation");
  Truncation t;
  t.window = decode_box(field(tj, "window"));
  t.step = tj.contains("step") ? number(tj, "step") : 0.0;
  t.min_side = decode_bound(tj, "min_side", 0.0);
  t.max_side = decode_bound(tj, "max_side", std::numeric_limits<double>::infinity());
  if (kind == "all_cubes") return CubeFamily(AllCubes{}, t);
  if (kind == "centered_at") {
    const int rungs = j.contains("rungs_per_octave") ? j.at("rungs_per_octave").get<int>() : 2;
    return CubeFamily(CenteredAt{decode_point_set(field(j, "centers")), rungs}, t);
  }
  if (kind == "whitney")
    return CubeFamily(Whitney{decode_point_set(field(j, "omega")), number(j, "r1"), number(j, "r2")}, t);
  if (kind == "dyadic") {
    const CubePredicate pred =
        j.contains("predicate") ? decode_predicate(j.at("predicate")) : CubePredicate{AnyCube{}};
    return CubeFamily(DyadicRestricted{decode_lattice(field(j, "lattice")), pred}, t);
  }
  throw Error("unknown family kind '" + kind + "'");
}

}  // namespace morrey
