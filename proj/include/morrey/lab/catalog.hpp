#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "morrey/error.hpp"
#include "morrey/norms.hpp"
#include "morrey/serialize.hpp"

namespace morrey::lab {

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Config readers. All throw ConfigError with the offending key.
//
// Grid:   {"n", "cells", "half_extent"}            centered box [-a, a]^n
//         {"n", "cells", "corner": [...], "h"}     explicit corner and step
//         {"file": path}                           grid of a stored function
// Fields: {"type": "constant", "value"}
//         {"type": "power", "a", "center"?}        |x - center|^a
//         {"type": "indicator", "cube": {center, side}}
//         {"type": "ramp", "direction"?, "offset"?}
//         {"type": "random", "lo"?, "hi"?, "blocks"?, "seed"?}
//         {"type": "file", "path"}
// With "blocks" a random field is constant on a blocks^n partition of the
// grid box, so it is the same function on every refinement of the grid.
GridSpec grid_from_json(const Json& j);
GridFunction field_from_json(const Json& sel, const GridSpec& g, std::uint64_t seed);
Weight weight_from_json(const Json& sel, const GridSpec& g, std::uint64_t seed);

using FieldSampler = std::function<GridFunction(const GridSpec&)>;
FieldSampler sampler_from_json(const Json& sel, std::uint64_t seed);

/// Explicit array of points, or {"lacunary": {"nu", "jmin", "jmax"}} in 1D,
/// or {"sphere": {"nu", "n", "jmin", "jmax", "max_per_sphere"?}}.
PointSet points_from_json(const Json& j);

/// A full family encoding, or a shorthand whose missing truncation defaults
/// to the grid box, step h and unbounded sides. Shorthand kinds take their
/// parameters inline: {"kind": "whitney", "omega", "r1", "r2"},
/// {"kind": "centered_at", "centers", "min_side"?, "max_side"?},
/// {"kind": "dyadic", "shift"?, "predicate"?}.
CubeFamily family_from_json(const Json& j, const GridSpec& g);

MorreyParams params_from_json(const Json& j);

double number_at(const Json& j, const char* key);
double number_or(const Json& j, const char* key, double fallback);
std::int64_t integer_at(const Json& j, const char* key);
std::int64_t integer_or(const Json& j, const char* key, std::int64_t fallback);
std::string string_or(const Json& j, const char* key, const std::string& fallback);
const Json& object_at(const Json& j, const char* key);

// Test functions.
GridFunction indicator(const GridSpec& g, const Cube& q);
GridFunction ramp(const GridSpec& g, const Point& direction, double offset);
GridFunction block_random(const GridSpec& g, std::size_t blocks, std::uint64_t seed, double lo, double hi);
GridFunction cell_random(const GridSpec& g, std::uint64_t seed, double lo, double hi);

struct CorpusOptions {
  /// chi_Q for each given cube.
  bool indicators = true;
  /// sigma chi_Q with sigma = w^(-1/(p-1)) for each given cube.
  bool dual_extremals = true;
  bool ramps = true;
  /// |x|^(-b) on the grid box and on its positive orthant, for each listed b.
  std::vector<double> power_exponents;
  std::size_t random_fields = 4;
  std::size_t random_blocks = 8;
  std::uint64_t seed = 1;
  double p = 2.0;
};

/// Deterministic corpus; labels encode the generating cube or seed.
Corpus build_corpus(const GridSpec& g, const Weight& w, const std::vector<Cube>& cubes,
                    const CorpusOptions& opt);

}  // namespace morrey::lab
