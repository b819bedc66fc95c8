#include "morrey/norms.hpp"

#include <cmath>

#include "morrey/detail/overloaded.hpp"
#include "morrey/error.hpp"

namespace morrey {

void MorreyParams::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error("Morrey exponent p must be >= 1");
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error("Morrey exponent lambda must lie in (0, 1)");
}

MorreyEvaluator::MorreyEvaluator(const GridFunction& f, const Weight& w, MorreyParams params)
    : mass_(std::make_shared<const SummedTable>(weighted_power(f, w, params.p))), params_(params) {
  params_.validate();
}

MorreyEvaluator::MorreyEvaluator(SummedTable mass, MorreyParams params)
    : MorreyEvaluator(std::make_shared<const SummedTable>(std::move(mass)), params) {}

MorreyEvaluator::MorreyEvaluator(std::shared_ptr<const SummedTable> mass, MorreyParams params)
    : mass_(std::move(mass)), params_(params) {
  params_.validate();
}

double MorreyEvaluator::raw_from_mass(double mass, const Cube& q) const {
  if (mass <= 0.0) return 0.0;
  return mass / std::pow(q.volume(), params_.lambda);
}

double MorreyEvaluator::raw_term(const Cube& q) const { return raw_from_mass(mass_->integral(q), q); }

double MorreyEvaluator::raw_term(const Cube& q, const Cube& k) const {
  Box b = intersect(q.box(), k.box());
  return b.empty() ? 0.0 : raw_from_mass(mass_->integral(b), q);
}

double MorreyEvaluator::term(const Cube& q) const {
  return std::pow(raw_term(q), 1.0 / params_.p);
}

double MorreyEvaluator::term(const Cube& q, const Cube& k) const {
  return std::pow(raw_term(q, k), 1.0 / params_.p);
}

namespace {

template <class Raw>
NormResult maximize(const CubeFamily& family, double p, Raw&& raw) {
  NormResult r;
  double best = -1.0;
  family.for_each([&](const Cube& q) {
    ++r.cubes_examined;
    double t = raw(q);
    if (t > best || (t == best && q < r.argmax)) {
      best = t;
      r.argmax = q;
    }
  });
  if (r.cubes_examined == 0) throw Error("family truncation produced no cubes");
  r.value = std::pow(best, 1.0 / p);
  return r;
}

}  // namespace

NormResult MorreyEvaluator::norm(const CubeFamily& family) const {
  return maximize(family, params_.p, [&](const Cube& q) { return raw_term(q); });
}

NormResult MorreyEvaluator::norm(const CubeFamily& family, const Cube& k) const {
  return maximize(family, params_.p, [&](const Cube& q) { return raw_term(q, k); });
}

NormResult morrey_norm(const GridFunction& f, const Weight& w, const MorreyParams& params,
                       const CubeFamily& family) {
  return MorreyEvaluator(f, w, params).norm(family);
}

double lp_norm(const GridFunction& f, const Weight& w, double p) {
  if (!(p >= 1.0)) throw Error("exponent p must be at least 1");
  GridFunction g = weighted_power(f, w, p);
  long double acc = 0.0L;
  for (double v : g.values()) acc += v;
  return std::pow(static_cast<double>(acc * g.spec().cell_volume()), 1.0 / p);
}

double indicator_norm(const Cube& q, const Weight& w, const MorreyParams& params,
                      const CubeFamily& family) {
  return MorreyEvaluator(SummedTable(w.function()), params).norm(family, q).value;
}

double restricted_norm(const GridFunction& f, const Weight& w, const MorreyParams& params,
                       const CubeFamily& family, const Cube& k) {
  return MorreyEvaluator(f, w, params).norm(family, k).value;
}

double norm_in(const NormSpec& space, const GridFunction& f) {
  return std::visit(detail::Overloaded{
                        [&](const MorreySpace& s) { return morrey_norm(f, s.w, s.params, s.family).value; },
                        [&](const LebesgueSpace& s) { return lp_norm(f, s.w, s.p); },
                    },
                    space);
}

const Weight& weight_of(const NormSpec& space) {
  return std::visit([](const auto& s) -> const Weight& { return s.w; }, space);
}

double exponent_of(const NormSpec& space) {
  return std::visit(detail::Overloaded{
                        [](const MorreySpace& s) { return s.params.p; },
                        [](const LebesgueSpace& s) { return s.p; },
                    },
                    space);
}

std::string describe(const NormSpec& space) {
  return std::visit(detail::Overloaded{
                        [](const MorreySpace& s) {
                          return "morrey(p=" + std::to_string(s.params.p) +
                                 ", lambda=" + std::to_string(s.params.lambda) + ", " +
                                 s.family.kind_name() + ")";
                        },
                        [](const LebesgueSpace& s) { return "lebesgue(p=" + std::to_string(s.p) + ")"; },
                    },
                    space);
}

}  // namespace morrey
