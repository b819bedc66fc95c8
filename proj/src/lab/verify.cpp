#include "morrey/lab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "morrey/annulus.hpp"
#include "morrey/lacunary.hpp"
#include "morrey/rng.hpp"

namespace morrey::lab {

namespace {

constexpr double kRatioTol = 1e-9;

double whitney_ratio(const Cube& q, const PointSet& omega) { return distance(q, omega) / q.diam(); }

double root(double raw, double p) { return std::pow(raw, 1.0 / p); }

NormResult checked_norm(const MorreyEvaluator& ev, const CubeFamily& fam) {
  if (fam.count() == 0) throw Error("family truncation produced no cubes");
  return ev.norm(fam);
}

void put_norm(Json& q, const std::string& key, const NormResult& r) { q[key] = encode(r); }

}  // namespace

Report verify_eqst(const GridFunction& f, const Weight& w, const MorreyParams& params,
                   const PointSet& omega, double r1, double r2) {
  params.validate();
  require_same_grid(f.spec(), w.spec());
  if (!(r1 > 0.0 && r1 < r2)) throw Error("verify_eqst needs 0 < r1 < r2");
  const GridSpec& g = f.spec();
  const double n = static_cast<double>(g.dim());
  const double p = params.p;
  const double lambda = params.lambda;
  const Box box = g.box();
  const double h = g.step();

  int k = 0;
  double alpha1 = r1, alpha2 = r2;
  while (k < 1 || alpha1 <= 1.0) {
    alpha1 *= 2.0;
    alpha2 = 2.0 * (alpha2 + 1.0);
    ++k;
  }

  Report rep("verify-eqst");
  Json& par = rep.parameters();
  par["n"] = g.dim();
  par["p"] = number(p);
  par["lambda"] = number(lambda);
  par["r1"] = number(r1);
  par["r2"] = number(r2);
  par["alpha1"] = number(alpha1);
  par["alpha2"] = number(alpha2);
  par["iterations"] = k;
  par["omega"] = encode(omega);
  par["grid"] = encode(g);

  const MorreyEvaluator ev(f, w, params);
  Table& wit = rep.table("witnesses", {"part", "role", "center", "side", "term"});
  auto witness = [&](const char* part, const char* role, const Cube& q, double term) {
    wit.add({part, role, q.center().to_string(), number(q.side()), number(term)});
  };

  // (a) one subdivision step.
  const CubeFamily coarse = CubeFamily::whitney(omega, r1, r2, box, h);
  const CubeFamily fine = CubeFamily::whitney(omega, 2.0 * r1, 2.0 * (r2 + 1.0), box, 0.5 * h);
  const NormResult nc = checked_norm(ev, coarse);
  const NormResult nf = checked_norm(ev, fine);
  const double bound_a = std::pow(2.0, n * (1.0 - lambda) / p);

  std::size_t children = 0, children_outside = 0;
  double worst_a = 0.0;
  Cube worst_a_cube, worst_a_child;
  coarse.for_each([&](const Cube& q) {
    const double rq = ev.raw_term(q);
    double best = 0.0;
    Cube best_child;
    const auto ch = q.children();
    for (std::size_t c = 0; c < q.child_count(); ++c) {
      ++children;
      if (!fine.satisfies_kind(ch[c])) ++children_outside;
      const double rc = ev.raw_term(ch[c]);
      if (rc > best) {
        best = rc;
        best_child = ch[c];
      }
    }
    if (rq <= 0.0) return;
    const double ratio = best > 0.0 ? root(rq / best, p) : std::numeric_limits<double>::infinity();
    if (ratio > worst_a) {
      worst_a = ratio;
      worst_a_cube = q;
      worst_a_child = best_child;
    }
  });

  Json& qa = rep.quantities();
  put_norm(qa, "norm_r1_r2", nc);
  put_norm(qa, "norm_2r1_2r2p2", nf);
  const double ratio_a = nf.value > 0.0 ? nc.value / nf.value : (nc.value > 0.0 ? INFINITY : 0.0);
  qa["ratio_a"] = number(ratio_a);
  qa["bound_a"] = number(bound_a);
  qa["children_checked"] = children;
  qa["worst_cube_ratio_a"] = number(worst_a);
  witness("a", "coarse_argmax", nc.argmax, nc.value);
  witness("a", "fine_argmax", nf.argmax, nf.value);
  if (worst_a > 0.0) {
    witness("a", "worst_cube", worst_a_cube, ev.term(worst_a_cube));
    witness("a", "worst_cube_best_child", worst_a_child, ev.term(worst_a_child));
  }
  rep.add(check_le("a.norm_ratio", ratio_a, bound_a, kRatioTol, "2^{n(1-lambda)/p}"));
  rep.add(check_le("a.cube_vs_children", worst_a, bound_a, kRatioTol, "max over cubes of term(Q)/max_j term(Q_j)"));
  rep.add(check_flag("a.children_in_fine_family", children_outside == 0,
                     std::to_string(children - children_outside) + "/" + std::to_string(children)));

  // (b) enclosing dilations.
  const CubeFamily alpha_fam = CubeFamily::whitney(omega, alpha1, alpha2, box, h);
  const NormResult na = checked_norm(ev, alpha_fam);
  const double bound_b = std::pow(alpha2 / r1, lambda * n / p);
  std::size_t checked = 0, not_found = 0, not_member = 0, not_containing = 0, too_big = 0;
  double worst_b = 0.0;
  Cube worst_b_cube, worst_b_tilde;
  alpha_fam.for_each([&](const Cube& q) {
    ++checked;
    auto ratio_at = [&](double t) { return whitney_ratio(q.dilate(t), omega); };
    double lo = 1.0, hi = 2.0;
    int doublings = 0;
    while (ratio_at(hi) >= r1 && doublings < 200) {
      lo = hi;
      hi *= 2.0;
      ++doublings;
    }
    for (int it = 0; it < 400 && ratio_at(lo) > r1 * (1.0 + 1e-12); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (ratio_at(mid) >= r1 ? lo : hi) = mid;
    }
    const Cube qt = q.dilate(lo);
    const double rt = ratio_at(lo);
    if (!(rt >= r1 && rt <= r1 * (1.0 + 1e-12))) ++not_found;
    if (!whitney_member(qt, omega, r1, r2)) ++not_member;
    if (!qt.contains(q)) ++not_containing;
    if (qt.diam() > (alpha2 / r1) * q.diam() * (1.0 + 1e-12)) ++too_big;
    const double rq = ev.raw_term(q);
    if (rq <= 0.0) return;
    const double rqt = ev.raw_term(qt);
    const double ratio = rqt > 0.0 ? root(rq / rqt, p) : std::numeric_limits<double>::infinity();
    if (ratio > worst_b) {
      worst_b = ratio;
      worst_b_cube = q;
      worst_b_tilde = qt;
    }
  });
  put_norm(qa, "norm_alpha1_alpha2", na);
  qa["ratio_b_norm_level"] = number(nc.value > 0.0 ? na.value / nc.value : 0.0);
  qa["bound_b"] = number(bound_b);
  qa["enclosing_searched"] = checked;
  qa["worst_cube_ratio_b"] = number(worst_b);
  witness("b", "alpha_argmax", na.argmax, na.value);
  if (worst_b > 0.0) {
    witness("b", "worst_cube", worst_b_cube, ev.term(worst_b_cube));
    witness("b", "worst_cube_enclosing", worst_b_tilde, ev.term(worst_b_tilde));
  }
  rep.add(check_flag("b.enclosing_ratio_reaches_r1", not_found == 0, std::to_string(not_found) + " misses"));
  rep.add(check_flag("b.enclosing_in_r1_r2_band", not_member == 0, std::to_string(not_member) + " misses"));
  rep.add(check_flag("b.enclosing_contains_cube", not_containing == 0, std::to_string(not_containing) + " misses"));
  rep.add(check_flag("b.enclosing_diameter", too_big == 0, "diam <= (alpha2/r1) diam Q"));
  rep.add(check_le("b.cube_vs_enclosing", worst_b, bound_b, kRatioTol, "(alpha2/r1)^{lambda n/p}"));
  return rep;
}

Report verify_redw(const Cube& q, int big_n, const GridFunction& f, const Weight& w,
                   const MorreyParams& params) {
  params.validate();
  require_same_grid(f.spec(), w.spec());
  if (big_n < 1) throw Error("verify_redw needs N >= 1");
  const GridSpec& g = f.spec();
  if (q.dim() != g.dim()) throw Error("cube dimension does not match the grid");
  const std::size_t dim = g.dim();
  const double n = static_cast<double>(dim);
  const double lambda = params.lambda;
  const double gt = static_cast<double>(big_n) / (big_n + 1.0);
  const double h = g.step();
  const double first_side = q.side() / (2.0 * (big_n + 1.0));
  if (first_side < h)
    throw Error("annulus cover side " + format_number(first_side) + " is below the grid step " +
                format_number(h) + " for N = " + std::to_string(big_n));

  Report rep("verify-redw");
  Json& par = rep.parameters();
  par["n"] = dim;
  par["N"] = big_n;
  par["p"] = number(params.p);
  par["lambda"] = number(lambda);
  par["cube"] = encode(q);
  par["grid"] = encode(g);

  const MorreyEvaluator ev(f, w, params);
  const std::size_t expect_count = annulus_cover_count(dim, big_n);
  Table& ann = rep.table("annuli", {"k", "cover_side", "count", "volume", "expected_volume", "max_term"});

  bool count_ok = true, disjoint_ok = true, volume_ok = true, distance_ok = true, nested_ok = true;
  double max_raw = 0.0;
  Cube argmax;
  long double weighted_sum = 0.0L;  // sum_k g^{k lambda n} sum_j raw_{j,k}
  long double annular_mass = 0.0L;
  double series = 0.0;
  int levels = 0;
  for (int k = 0;; ++k) {
    const Cube outer = q.dilate(std::pow(gt, k));
    const Cube inner = q.dilate(std::pow(gt, k + 1));
    const double side = inner.side() / (2.0 * big_n);
    if (side < h) break;
    const auto cover = annulus_cover(inner, big_n);
    if (cover.size() != expect_count) count_ok = false;
    double vol = 0.0;
    long double raw_sum = 0.0L;
    double level_max = 0.0;
    for (std::size_t a = 0; a < cover.size(); ++a) {
      const Cube& l = cover[a];
      vol += l.volume();
      if (!annulus_distance_bounds(l, inner.center(), big_n, 1e-12)) distance_ok = false;
      if (!outer.dilate(1.0 + 1e-12).contains(l) || inner.contains(l.center())) nested_ok = false;
      for (std::size_t b = a + 1; b < cover.size(); ++b) {
        bool apart = false;
        for (std::size_t i = 0; i < dim && !apart; ++i)
          apart = std::fabs(l.center()[i] - cover[b].center()[i]) >= l.side() * (1.0 - 1e-12);
        if (!apart) disjoint_ok = false;
      }
      const double raw = ev.raw_term(l);
      raw_sum += raw;
      annular_mass += static_cast<long double>(ev.mass().integral(l));
      level_max = std::max(level_max, raw);
      if (raw > max_raw || (raw == max_raw && raw > 0.0 && l < argmax)) {
        argmax = l;
        max_raw = raw;
      }
    }
    const double want = (std::pow(1.0 + 1.0 / big_n, n) - 1.0) * inner.volume();
    if (std::fabs(vol - want) > 1e-12 * want) volume_ok = false;
    const double gk = std::pow(gt, k * lambda * n);
    weighted_sum += gk * raw_sum;
    series += gk;
    ann.add({k, number(side), cover.size(), number(vol), number(want), number(root(level_max, params.p))});
    ++levels;
  }

  const double pref = std::pow(2.0 * (big_n + 1.0), -lambda * n);
  const double qvol_l = std::pow(q.volume(), lambda);
  const double lhs_annular = static_cast<double>(annular_mass) / qvol_l;
  const double rhs_identity = pref * static_cast<double>(weighted_sum);
  const double c_k = static_cast<double>(expect_count) * pref * series;
  const double c_inf = static_cast<double>(expect_count) * pref / (1.0 - std::pow(gt, lambda * n));
  const double lhs_full = ev.raw_term(q);

  Json& qa = rep.quantities();
  qa["count_per_annulus"] = expect_count;
  qa["levels"] = levels;
  qa["innermost_side"] = number(q.side() * std::pow(gt, levels) / (2.0 * (big_n + 1.0)));
  qa["annular_term"] = number(lhs_annular);
  qa["full_term"] = number(lhs_full);
  qa["max_cover_term"] = number(max_raw);
  qa["max_cover_cube"] = encode(argmax);
  qa["series_constant_truncated"] = number(c_k);
  qa["series_constant"] = number(c_inf);
  qa["empirical_constant_annular"] = number(max_raw > 0.0 ? lhs_annular / max_raw : 0.0);
  qa["empirical_constant_full"] = number(max_raw > 0.0 ? lhs_full / max_raw : 0.0);

  rep.add(check_flag("count", count_ok, std::to_string(expect_count) + " = 2^n((N+1)^n - N^n) per annulus"));
  rep.add(check_flag("disjoint_interiors", disjoint_ok));
  rep.add(check_flag("volume_identity", volume_ok, "((1+1/N)^n - 1)|P|, rel 1e-12"));
  rep.add(check_flag("distance_bounds", distance_ok, "(N/sqrt n) diam L <= dist(L, c_Q) <= N diam L"));
  rep.add(check_flag("annulus_nesting", nested_ok));
  rep.add(check_eq("series_identity", lhs_annular, rhs_identity, kRatioTol,
                   "annular mass/|Q|^lambda = (2(N+1))^{-lambda n} sum_k g^{k lambda n} sum_j terms"));
  rep.add(check_le("annular_domination", lhs_annular, c_k * max_raw, kRatioTol,
                   "count * (2(N+1))^{-lambda n} sum_{k<=K} g^{k lambda n} * max term"));
  Check full = check_le("full_domination", lhs_full, c_inf * max_raw, kRatioTol,
                        "inner core below grid scale is not covered");
  full.advisory = true;
  rep.add(full);
  return rep;
}

Report verify_key_property(const PointSet& lambda, double nu, std::size_t samples, std::uint64_t seed) {
  Report rep("verify-kp");
  Json& par = rep.parameters();
  par["nu"] = number(nu);
  par["samples"] = samples;
  par["seed"] = seed;
  par["lambda"] = encode(lambda);
  const RcondResult rc = check_rcond(lambda, nu);
  rep.add(check_flag("rcond", rc.holds, "worst ratio " + format_number(rc.worst_ratio)));

  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (norm(lambda[i]) > 0.0) nonzero.push_back(i);
  Table& tab = rep.table("per_point", {"point", "samples", "violations", "min_gap"});
  std::vector<std::size_t> per(lambda.size(), 0), bad(lambda.size(), 0);
  std::vector<double> gap(lambda.size(), std::numeric_limits<double>::infinity());
  std::size_t violations = 0;
  if (!nonzero.empty()) {
    Rng rng(seed);
    const double sqrt_n = std::sqrt(static_cast<double>(lambda.dim()));
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t j = nonzero[rng.below(nonzero.size())];
      const Point& x = lambda[j];
      const Cube qj(x, norm(x) / (nu * sqrt_n));
      Cube r;
      do {
        const double side = qj.side() * (1.0 - rng.uniform());
        Point lo(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) lo[i] = qj.lo(i) + rng.uniform() * (qj.side() - side);
        r = Cube::from_corner(lo, side);
      } while (!qj.contains(r));
      const double d_all = distance(r, lambda);
      const double d_j = distance(r, x);
      ++per[j];
      if (d_all != d_j) {
        ++bad[j];
        ++violations;
      }
      double second = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < lambda.size(); ++i)
        if (i != j) second = std::min(second, distance(r, lambda[i]));
      gap[j] = std::min(gap[j], second - d_j);
    }
  }
  for (std::size_t j : nonzero) tab.add({lambda[j].to_string(), per[j], bad[j], number(gap[j])});
  rep.quantities()["points_sampled"] = nonzero.size();
  rep.quantities()["violations"] = violations;
  rep.add(check_eq("exact_distance_equality", static_cast<double>(violations), 0.0, 0.0,
                   "dist(R, Lambda) == dist(R, x_j)"));
  return rep;
}

Report verify_connect(const ConnectSetup& s) {
  s.params.validate();
  const std::size_t dim = s.base.dim();
  const double n = static_cast<double>(dim);
  const double sqrt_n = std::sqrt(n);
  const double p = s.params.p;
  const double lambda = s.params.lambda;
  if (s.levels < 1) throw Error("verify_connect needs at least one grid level");
  if (s.lambda.dim() != dim) throw Error("point set dimension does not match the grid");
  const EquaParams eq = s.equa ? *s.equa : solve_epsilon_N(s.nu, dim);

  Report rep("verify-connect");
  Json& par = rep.parameters();
  par["n"] = dim;
  par["p"] = number(p);
  par["lambda"] = number(lambda);
  par["nu"] = number(s.nu);
  par["N"] = eq.big_n;
  par["epsilon"] = number(eq.epsilon);
  par["levels"] = s.levels;
  par["grid"] = encode(s.base);
  par["points"] = encode(s.lambda);

  const double residual = std::fabs(equa_lhs(eq, dim) - 1.0 / s.nu);
  rep.add(check_le("solver_residual", residual, 1e-12 / s.nu, 0.0, "|lhs - 1/nu| <= 1e-12/nu"));
  const RcondResult rc = check_rcond(s.lambda, s.nu);
  rep.add(check_flag("rcond", rc.holds, "worst ratio " + format_number(rc.worst_ratio)));

  const double r1a = eq.epsilon * eq.big_n / sqrt_n;
  const double r1b = eq.big_n / sqrt_n;
  const double r2 = eq.big_n;
  par["whitney_a"] = Json{{"r1", number(r1a)}, {"r2", number(r2)}};
  if (r1b < r2) par["whitney_b"] = Json{{"r1", number(r1b)}, {"r2", number(r2)}};

  Table& tab = rep.table("levels", {"level", "cells", "h", "norm_F", "norm_Wa", "norm_Wb", "ratio_F_Wa",
                                    "ratio_F_Wb", "max_dilation", "easy_ratio", "easy_bound"});
  std::vector<double> ratios;
  double worst_easy_margin = 0.0;
  std::size_t outside_f = 0, cube_failures = 0;
  bool all_easy_ok = true;
  double max_d_all = 0.0;

  for (std::size_t level = 0; level < s.levels; ++level) {
    const GridSpec g = s.base.refined(std::size_t{1} << level);
    const GridFunction f = s.f(g);
    const Weight w(s.w(g));
    const Box box = g.box();
    const double h = g.step();
    std::vector<Point> inside;
    for (const Point& x : s.lambda)
      if (box.contains(x)) inside.push_back(x);
    if (inside.empty()) throw Error("no point of the set lies in the grid box");
    const PointSet lam(inside);

    double extent = 0.0;
    for (std::size_t i = 0; i < dim; ++i) extent = std::max(extent, box.extent(i));
    const double max_side = ladder_side(h, 2, ladder_rung_at_least(h, 2, 2.0 * extent));
    const CubeFamily fam_f = CubeFamily::centered_at(lam, box, h, max_side, 2);
    const CubeFamily fam_a = CubeFamily::whitney(lam, r1a, r2, box, h);
    // In one dimension N/sqrt n = N and the second band is degenerate.
    const bool has_b = r1b < r2;

    const MorreyEvaluator ev(f, w, s.params);
    const NormResult nf = checked_norm(ev, fam_f);
    const NormResult na = checked_norm(ev, fam_a);
    const NormResult nb = has_b ? checked_norm(ev, CubeFamily::whitney(lam, r1b, r2, box, h)) : NormResult{};

    // Enclosing cubes centered at the nearest point, rounded up to the ladder.
    double max_d = 1.0;
    fam_a.for_each([&](const Cube& q) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < lam.size(); ++j) {
        const double d = distance(q, lam[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      const Point& c = lam[best];
      double half = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        half = std::max({half, std::fabs(q.lo(i) - c[i]), std::fabs(q.hi(i) - c[i])});
      int rung = ladder_rung_at_least(h, 2, 2.0 * half);
      Cube qp(c, ladder_side(h, 2, rung));
      while (!qp.contains(q)) qp = Cube(c, ladder_side(h, 2, ++rung));
      if (qp.side() > max_side * (1.0 + 1e-12)) ++outside_f;
      const double d = qp.side() / q.side();
      max_d = std::max(max_d, d);
      const double rq = ev.raw_term(q);
      if (rq > 0.0) {
        const double lhs = root(rq, p);
        const double rhs = std::pow(d, lambda * n / p) * ev.term(qp);
        if (lhs > rhs * (1.0 + kRatioTol)) ++cube_failures;
        if (rhs > 0.0) worst_easy_margin = std::max(worst_easy_margin, lhs / rhs);
      }
    });
    max_d_all = std::max(max_d_all, max_d);
    const double easy_bound = std::pow(max_d, lambda * n / p);
    const double easy_ratio = nf.value > 0.0 ? na.value / nf.value : (na.value > 0.0 ? INFINITY : 0.0);
    if (easy_ratio > easy_bound * (1.0 + kRatioTol)) all_easy_ok = false;

    const double ra = na.value > 0.0 ? nf.value / na.value : 0.0;
    const Json rb = has_b && nb.value > 0.0 ? number(nf.value / nb.value) : Json(nullptr);
    if (na.value > 0.0) ratios.push_back(ra);
    tab.add({level, g.cells(0), number(h), number(nf.value), number(na.value), has_b ? number(nb.value) : Json(nullptr),
             number(ra), rb, number(max_d), number(easy_ratio), number(easy_bound)});
  }

  Json& qa = rep.quantities();
  qa["max_dilation"] = number(max_d_all);
  qa["dilation_bound"] = number(2.0 * std::sqrt(2.0) * (1.0 + r2 * sqrt_n));
  qa["worst_cube_ratio"] = number(worst_easy_margin);
  rep.add(check_flag("enclosing_cubes_in_F", outside_f == 0, std::to_string(outside_f) + " outside"));
  rep.add(check_flag("easy_direction_per_cube", cube_failures == 0,
                     "term(Q) <= (l'/l)^{lambda n/p} term(Q')"));
  rep.add(check_flag("easy_direction_norm", all_easy_ok, "||f||_Wa <= (max l'/l)^{lambda n/p} ||f||_F"));
  if (ratios.empty()) {
    qa["stability"] = "skipped";
    rep.add(check_flag("stability", true, "all norms vanish"));
  } else {
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    const double spread = *mx / *mn;
    qa["ratio_spread"] = number(spread);
    Check c = check_le("stability", spread, 2.0, 0.0, "max/min of ||f||_F/||f||_Wa over levels < 2");
    c.passed = spread < 2.0;
    rep.add(c);
  }
  return rep;
}

}  // namespace morrey::lab
