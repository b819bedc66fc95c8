#pragma once

#include <iosfwd>
#include <string>

#include "morrey/grid_function.hpp"

namespace morrey {

// Binary layout (little-endian):
//   magic "MRYGRID1", u32 n, f64 corner[n], f64 extent[n], f64 h,
//   f64 values[prod cells], row-major with axis 0 slowest.
// The cell counts are extent/h; values round-trip bit for bit.
void write_grid_binary(std::ostream& out, const GridFunction& g);
GridFunction read_grid_binary(std::istream& in);

// CSV layout: optional '#' comment lines, then
//   n,<n>
//   corner,<c_0>,...
//   extent,<e_0>,...
//   h,<h>
// followed by the values, one row per run of the last axis, %.17g.
void write_grid_csv(std::ostream& out, const GridFunction& g, const std::string& comment = {});
GridFunction read_grid_csv(std::istream& in);

/// Dispatches on the extension: ".csv" is CSV, anything else binary.
void save_grid(const std::string& path, const GridFunction& g, const std::string& comment = {});
GridFunction load_grid(const std::string& path);

}  // namespace morrey
