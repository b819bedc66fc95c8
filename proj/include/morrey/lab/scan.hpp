#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morrey/lab/catalog.hpp"
#include "morrey/lab/report.hpp"

namespace morrey::lab {

enum class Trend { Stable, Growing, Indeterminate };
std::string to_string(Trend t);

/// Successive ratios v[s+1]/v[s]: stable when the last is <= `stable`,
/// growing when all are >= `growth`, otherwise indeterminate. Non-finite
/// values count as growing.
Trend classify_trend(const std::vector<double>& values, double stable, double growth);

struct ScanWeight {
  std::string label;
  Json selector;
  /// Exponent of a power weight, for the classical A_p label.
  std::optional<double> a;
};

/// Power weights |x|^a for a in {-0.5, 0, 0.5, 1.5, 2}.
std::vector<ScanWeight> default_scan_weights();

struct ScanConfig {
  std::size_t n = 1;
  MorreyParams params{2.0, 0.5};
  double half_extent = 1.0;
  std::size_t base_cells = 128;
  std::size_t levels = 3;
  /// "refine" halves h at fixed window; "window" doubles the window at fixed h.
  std::string ladder = "refine";
  std::vector<ScanWeight> weights = default_scan_weights();
  /// Centers of the Morrey family: lacunary set with ratio nu/(nu-1).
  double nu = 2.0;
  int jmin = -4;
  int jmax = 0;
  double stable_threshold = 1.05;
  double growth_threshold = 1.2;
  /// Cells per axis above which M is bounded via the three-lattice sum
  /// instead of evaluated exactly; 0 keeps the exact operator throughout.
  std::size_t lattice_bound_above = 0;
  CorpusOptions corpus{.power_exponents = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5}};
};

ScanConfig scan_config_from_json(const Json& j);

/// For each weight and scale: [w]_{A_p} over the dyadic family with the
/// corpus estimate of the dyadic maximal operator on L^p(w), and the A_X
/// estimate over the centered family with the corpus estimate of M on the
/// Morrey space. Trend flags of each pair are compared per weight.
Report scan_characterization(const ScanConfig& cfg);

}  // namespace morrey::lab
