#pragma once

#include "json.hpp"

#include "morrey/cube_family.hpp"

namespace morrey {

/// Insertion-ordered JSON keeps reports and config echoes byte-stable.
using Json = nlohmann::ordered_json;

// Structured-text (JSON) encodings of the geometric objects. Families carry
// {kind, parameters, truncation}; infinite side bounds are encoded as null.
// Decoders throw Error with the offending field in the message.

Json encode(const Point& x);
Json encode(const Box& b);
Json encode(const Cube& q);
Json encode(const PointSet& s);
Json encode(const DyadicLattice& lattice);
Json encode(const CubePredicate& pred);
Json encode(const CubeFamily& family);

Point decode_point(const Json& j);
Box decode_box(const Json& j);
Cube decode_cube(const Json& j);
PointSet decode_point_set(const Json& j);
DyadicLattice decode_lattice(const Json& j);
CubePredicate decode_predicate(const Json& j);
CubeFamily decode_family(const Json& j);

}  // namespace morrey
