#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "morrey/cube_family.hpp"
#include "morrey/summed_table.hpp"

namespace morrey {

/// Exponents of the Morrey norm sup_Q (|Q|^-lambda int_Q |f|^p w)^(1/p).
/// p >= 1 and 0 < lambda < 1.
struct MorreyParams {
  double p = 2.0;
  double lambda = 0.5;

  /// Throws Error when out of range.
  void validate() const;
};

struct NormResult {
  double value = 0.0;
  /// Cube realizing the maximum; ties go to the smallest cube in Cube order.
  Cube argmax;
  std::size_t cubes_examined = 0;
};

/// Morrey terms of a fixed integrand |f|^p w. Build once, query many cubes.
class MorreyEvaluator {
 public:
  MorreyEvaluator(const GridFunction& f, const Weight& w, MorreyParams params);
  /// From a precomputed integrand table (|f|^p w already applied).
  MorreyEvaluator(SummedTable mass, MorreyParams params);
  MorreyEvaluator(std::shared_ptr<const SummedTable> mass, MorreyParams params);

  const MorreyParams& params() const { return params_; }
  const SummedTable& mass() const { return *mass_; }

  /// (|Q|^-lambda int_Q |f|^p w)^(1/p).
  double term(const Cube& q) const;
  /// Same with the integral restricted to Q intersect K.
  double term(const Cube& q, const Cube& k) const;
  /// Before the 1/p root; monotone in term().
  double raw_term(const Cube& q) const;
  double raw_term(const Cube& q, const Cube& k) const;

  NormResult norm(const CubeFamily& family) const;
  NormResult norm(const CubeFamily& family, const Cube& k) const;

 private:
  double raw_from_mass(double mass, const Cube& q) const;

  std::shared_ptr<const SummedTable> mass_;
  MorreyParams params_;
};

/// Throws Error("family truncation produced no cubes") on an empty enumeration.
NormResult morrey_norm(const GridFunction& f, const Weight& w, const MorreyParams& params,
                       const CubeFamily& family);

/// (int_box |f|^p w)^(1/p).
double lp_norm(const GridFunction& f, const Weight& w, double p);

/// Morrey norm of chi_Q: max over R of (w(R cap Q) / |R|^lambda)^(1/p).
double indicator_norm(const Cube& q, const Weight& w, const MorreyParams& params,
                      const CubeFamily& family);

/// Morrey norm of f chi_K.
double restricted_norm(const GridFunction& f, const Weight& w, const MorreyParams& params,
                       const CubeFamily& family, const Cube& k);

/// Function spaces the estimators can measure in.
struct MorreySpace {
  Weight w;
  MorreyParams params;
  CubeFamily family;
};
struct LebesgueSpace {
  Weight w;
  double p = 2.0;
};
using NormSpec = std::variant<MorreySpace, LebesgueSpace>;

double norm_in(const NormSpec& space, const GridFunction& f);
const Weight& weight_of(const NormSpec& space);
double exponent_of(const NormSpec& space);
std::string describe(const NormSpec& space);

/// A labelled test function for corpus-based estimators.
struct CorpusEntry {
  std::string label;
  GridFunction f;
};
using Corpus = std::vector<CorpusEntry>;

}  // namespace morrey
