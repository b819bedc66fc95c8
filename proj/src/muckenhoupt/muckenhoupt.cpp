#include "morrey/muckenhoupt.hpp"

#include <cmath>
#include <memory>

#include "morrey/detail/overloaded.hpp"
#include "morrey/error.hpp"

namespace morrey {

GridFunction dual_weight(const Weight& w, double p) {
  if (!(p > 1.0)) throw Error("A_p requires p > 1");
  const double e = -1.0 / (p - 1.0);
  GridFunction s(w.spec());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = w[k] > 0.0 ? std::pow(w[k], e) : 0.0;
  return s;
}

ApReport ap_constant(const Weight& w, double p, const CubeFamily& family, bool keep_terms) {
  const SummedTable wt(w.function());
  const SummedTable st(dual_weight(w, p));
  GridFunction zeros(w.spec());
  bool any_zero = false;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    zeros[k] = w[k] > 0.0 ? 0.0 : 1.0;
    any_zero = any_zero || w[k] == 0.0;
  }
  const std::optional<SummedTable> zt = any_zero ? std::optional<SummedTable>(zeros) : std::nullopt;

  ApReport r;
  double best = -1.0;
  family.for_each([&](const Cube& q) {
    ++r.cubes_examined;
    if (zt && zt->integral(q) > 0.0) throw Error("dual weight undefined");
    const double t = wt.average(q) * std::pow(st.average(q), p - 1.0);
    if (keep_terms) r.terms.emplace_back(q, t);
    if (t > best || (t == best && q < r.argmax)) {
      best = t;
      r.argmax = q;
    }
  });
  if (r.cubes_examined == 0) throw Error("family truncation produced no cubes");
  r.value = best;
  return r;
}

AxEstimate ax_constant_estimate(const NormSpec& space, const CubeFamily& family, const Corpus& corpus) {
  if (corpus.empty()) throw Error("empty corpus");
  const Weight& w = weight_of(space);
  const double p = exponent_of(space);
  const std::vector<Cube> cubes = family.enumerate();
  if (cubes.empty()) throw Error("family truncation produced no cubes");

  // |chi_Q|_X per cube, shared by every corpus entry.
  std::vector<double> chi_norm(cubes.size());
  const auto wt = std::make_shared<const SummedTable>(w.function());
  std::visit(detail::Overloaded{
                 [&](const MorreySpace& s) {
                   MorreyEvaluator ev(wt, s.params);
                   for (std::size_t i = 0; i < cubes.size(); ++i) chi_norm[i] = ev.norm(s.family, cubes[i]).value;
                 },
                 [&](const LebesgueSpace&) {
                   for (std::size_t i = 0; i < cubes.size(); ++i)
                     chi_norm[i] = std::pow(wt->integral(cubes[i]), 1.0 / p);
                 },
             },
             space);

  AxEstimate est;
  double best = -1.0;
  for (const auto& entry : corpus) {
    require_same_grid(entry.f.spec(), w.spec());
    const SummedTable abs_f(entry.f.abs());
    const auto mass = std::make_shared<const SummedTable>(weighted_power(entry.f, w, p));
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      const Cube& q = cubes[i];
      const double restricted = std::visit(
          detail::Overloaded{
              [&](const MorreySpace& s) { return MorreyEvaluator(mass, s.params).norm(s.family, q).value; },
              [&](const LebesgueSpace&) { return std::pow(mass->integral(q), 1.0 / p); },
          },
          space);
      if (!(restricted > 0.0)) {
        ++est.skipped;
        continue;
      }
      const double ratio = abs_f.average(q) * chi_norm[i] / restricted;
      ++est.ratios_evaluated;
      if (ratio > best) {
        best = ratio;
        est.argmax = q;
        est.argmax_label = entry.label;
      }
    }
  }
  if (est.ratios_evaluated == 0) throw Error("every A_X ratio had a zero denominator");
  est.value = best;
  return est;
}

ApMembership classify_power_weight(double a, double p, int n) {
  const double lo = -static_cast<double>(n);
  const double hi = static_cast<double>(n) * (p - 1.0);
  if (a == lo || a == hi) return ApMembership::Boundary;
  return (a > lo && a < hi) ? ApMembership::InRange : ApMembership::OutOfRange;
}

std::string to_string(ApMembership m) {
  switch (m) {
    case ApMembership::InRange: return "in_range";
    case ApMembership::Boundary: return "boundary";
    case ApMembership::OutOfRange: return "out_of_range";
  }
  return "unknown";
}

}  // namespace morrey
