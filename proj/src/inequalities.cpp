#include "dqi/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqi/dualvol.hpp"
#include "dqi/errors.hpp"
#include "dqi/intersect.hpp"
#include "dqi/mc.hpp"

namespace dqi {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::equality_confirmed: return "equality-confirmed";
  }
  return "pass";
}

namespace {

constexpr double kTolFloor = 1e-12;
constexpr double kTiny = 1e-300;

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

using SidesFn = std::function<Sides(int outer_res, int inner_res)>;

// Evaluates both sides at the configured resolutions; under the automatic
// policy also at half resolution, taking the movement of each side as the
// error gauge behind the tolerance.
IneqReport finish_report(std::string name, std::string ref, const CheckRules& rules,
                         const SidesFn& sides, bool equality_expected,
                         std::map<std::string, double> notes = {}) {
  IneqReport rep;
  rep.name = std::move(name);
  rep.ref = std::move(ref);
  rep.outer_res = rules.outer_res;
  rep.inner_res = rules.inner_res;
  rep.equality_expected = equality_expected;
  rep.notes = std::move(notes);

  const Sides full = sides(rules.outer_res, rules.inner_res);
  rep.lhs = full.lhs;
  rep.rhs = full.rhs;
  const double scale = std::max({std::abs(full.lhs), std::abs(full.rhs), kTiny});

  if (rules.tol.automatic) {
    const int ho = std::max(2, rules.outer_res / 2);
    const int hi = std::max(1, rules.inner_res / 2);
    const Sides half = sides(ho, hi);
    rep.err_lhs = std::abs(full.lhs - half.lhs);
    rep.err_rhs = std::abs(full.rhs - half.rhs);
    rep.tol = std::max(10.0 * std::max(rep.err_lhs, rep.err_rhs) / scale, kTolFloor);
  } else {
    rep.tol = rules.tol.fixed;
  }

  rep.slack = rep.rhs - rep.lhs;
  rep.rel_slack = rep.slack / scale;
  if (rep.rel_slack < -rep.tol) {
    rep.verdict = Verdict::fail;
  } else if (rep.equality_expected && std::abs(rep.rel_slack) <= rep.tol) {
    rep.verdict = Verdict::equality_confirmed;
  } else {
    rep.verdict = Verdict::pass;
  }
  return rep;
}

void require_order(double i, int n, const char* who) {
  if (!(i >= 0.0) || !(i < n)) {
    throw ParamError(std::string(who) + ": order must satisfy 0 <= i < n");
  }
}

Body unit_ball(int n) { return Body::ball(n, 1.0); }

std::vector<Body> repeat_bodies(const Body& a, int count_a, const Body& b, int count_b) {
  std::vector<Body> out;
  out.reserve(static_cast<size_t>(count_a + count_b));
  for (int c = 0; c < count_a; ++c) out.push_back(a);
  for (int c = 0; c < count_b; ++c) out.push_back(b);
  return out;
}

bool all_dilates(std::span<const Body> bodies) {
  for (size_t b = 1; b < bodies.size(); ++b) {
    if (!are_dilates(bodies[0], bodies[b])) return false;
  }
  return true;
}

}  // namespace

bool are_dilates(const Body& k, const Body& l, double rel_tol) {
  if (k.dim() != l.dim()) throw ParamError("are_dilates: dimension mismatch");
  const SphereRule probe = build_sphere_rule(k.dim() - 1, 3);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int p = 0; p < probe.count(); ++p) {
    const double ratio = k.radial(probe.node(p)) / l.radial(probe.node(p));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return hi - lo <= rel_tol * hi;
}

IneqReport check_lemma_c(const LemmaCInput& in) {
  if (!(in.a >= 0.0) || !(in.b >= 0.0)) throw ParamError("check_lemma_c: a, b must be >= 0");
  if (!(in.c > 0.0) || !(in.d > 0.0)) throw ParamError("check_lemma_c: c, d must be > 0");
  if (!(in.p > 0.0) || !(in.p < 1.0)) throw ParamError("check_lemma_c: p must lie in (0, 1)");

  IneqReport rep;
  rep.name = "lemma_c";
  rep.ref = "two-term-power-mean";
  rep.lhs = std::pow(in.a, in.p) * std::pow(in.c, 1.0 - in.p) +
            std::pow(in.b, in.p) * std::pow(in.d, 1.0 - in.p);
  rep.rhs = std::pow(in.a + in.b, in.p) * std::pow(in.c + in.d, 1.0 - in.p);
  const double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), kTiny});
  rep.slack = rep.rhs - rep.lhs;
  rep.rel_slack = rep.slack / scale;
  rep.tol = 1e-12;
  const double cross = std::max({std::abs(in.a * in.d), std::abs(in.b * in.c), kTiny});
  rep.equality_expected = std::abs(in.a * in.d - in.b * in.c) <= 1e-12 * cross;
  rep.notes["cross_difference"] = in.a * in.d - in.b * in.c;
  if (rep.rel_slack < -rep.tol) {
    rep.verdict = Verdict::fail;
  } else if (rep.equality_expected && std::abs(rep.rel_slack) <= rep.tol) {
    rep.verdict = Verdict::equality_confirmed;
  } else {
    rep.verdict = Verdict::pass;
  }
  return rep;
}

IneqReport check_dual_af_volumes(std::span<const Body> bodies, int r, const CheckRules& rules) {
  const int n = rules.n;
  if (static_cast<int>(bodies.size()) != n) {
    throw ParamError("check_dual_af_volumes: need exactly n bodies");
  }
  if (r < 1 || r > n) throw ParamError("check_dual_af_volumes: depth must satisfy 1 <= r <= n");
  const std::vector<Body> bs(bodies.begin(), bodies.end());

  SidesFn sides = [bs, r, n](int outer_res, int) -> Sides {
    const SphereRule rule = build_sphere_rule(n - 1, outer_res);
    const double base = dual_mixed_volume(bs, rule);
    double rhs = 1.0;
    for (int j = 0; j < r; ++j) {
      std::vector<Body> factor;
      factor.reserve(static_cast<size_t>(n));
      for (int c = 0; c < r; ++c) factor.push_back(bs[j]);
      for (int c = r; c < n; ++c) factor.push_back(bs[c]);
      rhs *= dual_mixed_volume(factor, rule);
    }
    return {std::pow(base, r), rhs};
  };
  CheckRules local = rules;
  local.inner_res = 0;
  IneqReport rep = finish_report("dual_af", "dual-aleksandrov-fenchel", local, sides,
                                 all_dilates(bodies));
  return rep;
}

IneqReport check_minkowski_mixed(const Body& k, const Body& l, double i, int j,
                                 const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_minkowski_mixed");
  if (j <= 0 || j >= n - 1) {
    throw ParamError("check_minkowski_mixed: mixture count must satisfy 0 < j < n-1");
  }
  SidesFn sides = [k, l, i, j, n](int outer_res, int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    const std::vector<Body> mixed = repeat_bodies(k, n - 1 - j, l, j);
    const double wm = querm_of_intersection_fused(mixed, i, outer, inner_res);
    const std::vector<Body> all_k = repeat_bodies(k, n - 1, k, 0);
    const std::vector<Body> all_l = repeat_bodies(l, n - 1, l, 0);
    const double wk = querm_of_intersection_fused(all_k, i, outer, inner_res);
    const double wl = querm_of_intersection_fused(all_l, i, outer, inner_res);
    return {std::pow(wm, n - 1), std::pow(wk, n - 1 - j) * std::pow(wl, j)};
  };
  return finish_report("minkowski_mixed", "minkowski-mixed-intersection", rules, sides,
                       are_dilates(k, l));
}

IneqReport check_querm_sum_minkowski(const Body& k, const Body& l, const Body& d,
                                     double lambda_d, double i, int j,
                                     const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_querm_sum_minkowski");
  if (j <= 0 || j >= n - 1) {
    throw ParamError("check_querm_sum_minkowski: mixture count must satisfy 0 < j < n-1");
  }
  if (!(lambda_d > 0.0)) throw ParamError("check_querm_sum_minkowski: dilate factor must be > 0");
  const Body dp = dilate(lambda_d, d);

  // The final tightening step is the two-term power mean bound with
  // (a, b, c, d) = (W(IK), W(ID), W(IL), W(ID')); its equality condition is
  // a*d' = b*c, recorded as a ratio in the notes.
  double ratio = 0.0;
  const int full_outer = rules.outer_res;
  SidesFn sides = [k, l, d, dp, i, j, n, full_outer, &ratio](int outer_res,
                                                             int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    const double w_mix_kl =
        querm_of_intersection_fused(repeat_bodies(k, n - 1 - j, l, j), i, outer, inner_res);
    const double w_mix_dd =
        querm_of_intersection_fused(repeat_bodies(d, n - 1 - j, dp, j), i, outer, inner_res);
    const double wk = querm_of_intersection_fused(repeat_bodies(k, n - 1, k, 0), i, outer,
                                                  inner_res);
    const double wl = querm_of_intersection_fused(repeat_bodies(l, n - 1, l, 0), i, outer,
                                                  inner_res);
    const double wd = querm_of_intersection_fused(repeat_bodies(d, n - 1, d, 0), i, outer,
                                                  inner_res);
    const double wdp = querm_of_intersection_fused(repeat_bodies(dp, n - 1, dp, 0), i, outer,
                                                   inner_res);
    if (outer_res == full_outer) ratio = (wk * wdp) / (wd * wl);
    const double lhs = std::pow(w_mix_kl + w_mix_dd, n - 1);
    const double rhs = std::pow(wk + wd, n - 1 - j) * std::pow(wl + wdp, j);
    return {lhs, rhs};
  };
  IneqReport rep = finish_report("querm_sum_minkowski", "querm-sum-minkowski", rules, sides,
                                 are_dilates(k, l));
  rep.notes["power_mean_ratio"] = ratio;
  return rep;
}

IneqReport check_af_intersection(std::span<const Body> bodies, double i, int r,
                                 const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_af_intersection");
  if (static_cast<int>(bodies.size()) != n - 1) {
    throw ParamError("check_af_intersection: need exactly n-1 bodies");
  }
  if (r < 1 || r > n - 1) {
    throw ParamError("check_af_intersection: depth must satisfy 1 <= r <= n-1");
  }
  const std::vector<Body> bs(bodies.begin(), bodies.end());

  SidesFn sides = [bs, i, r, n](int outer_res, int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    const double base = querm_of_intersection_fused(bs, i, outer, inner_res);
    double rhs = 1.0;
    for (int j = 0; j < r; ++j) {
      std::vector<Body> factor;
      factor.reserve(static_cast<size_t>(n - 1));
      for (int c = 0; c < r; ++c) factor.push_back(bs[j]);
      for (int c = r; c < n - 1; ++c) factor.push_back(bs[c]);
      rhs *= querm_of_intersection_fused(factor, i, outer, inner_res);
    }
    return {std::pow(base, r), rhs};
  };
  return finish_report("af_intersection", "af-mixed-intersection", rules, sides,
                       all_dilates(bodies));
}

IneqReport check_af_product(std::span<const Body> bodies, double i, const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_af_product");
  if (static_cast<int>(bodies.size()) != n - 1) {
    throw ParamError("check_af_product: need exactly n-1 bodies");
  }
  const std::vector<Body> bs(bodies.begin(), bodies.end());

  SidesFn sides = [bs, i, n](int outer_res, int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    const double base = querm_of_intersection_fused(bs, i, outer, inner_res);
    double rhs = 1.0;
    for (const Body& b : bs) {
      rhs *= querm_of_intersection_fused(repeat_bodies(b, n - 1, b, 0), i, outer, inner_res);
    }
    return {std::pow(base, n - 1), rhs};
  };
  return finish_report("af_product", "af-intersection-product", rules, sides,
                       all_dilates(bodies));
}

IneqReport check_af_hybrid(const Body& k, const Body& l, double i, int j,
                           const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_af_hybrid");
  if (j < 0 || j >= n - 1 || n - j - 2 < 0) {
    throw ParamError("check_af_hybrid: mixture count must satisfy 0 <= j <= n-2");
  }
  const Body b = unit_ball(n);

  SidesFn sides = [k, l, b, i, j, n](int outer_res, int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    std::vector<Body> mixed;
    mixed.reserve(static_cast<size_t>(n - 1));
    for (int c = 0; c < n - j - 2; ++c) mixed.push_back(k);
    for (int c = 0; c < j; ++c) mixed.push_back(b);
    mixed.push_back(l);
    const double base = querm_of_intersection_fused(mixed, i, outer, inner_res);
    const double wk =
        querm_of_intersection_fused(repeat_bodies(k, n - 1 - j, b, j), i, outer, inner_res);
    const double wl =
        querm_of_intersection_fused(repeat_bodies(l, n - 1 - j, b, j), i, outer, inner_res);
    return {std::pow(base, n - j - 1), std::pow(wk, n - j - 2) * wl};
  };
  return finish_report("af_hybrid", "af-hybrid-intersection", rules, sides, are_dilates(k, l));
}

IneqReport check_brunn_minkowski(const Body& k, const Body& l, double i, double alpha,
                                 const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_brunn_minkowski");
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw ParamError("check_brunn_minkowski: blend weight must lie in [0, 1]");
  }
  const Body sum = radial_combine(1.0, k, 1.0, l);
  const Body blend_a = alpha == 1.0   ? k
                       : alpha == 0.0 ? l
                                      : radial_combine(alpha, k, 1.0 - alpha, l);
  const Body blend_b = alpha == 1.0   ? l
                       : alpha == 0.0 ? k
                                      : radial_combine(1.0 - alpha, k, alpha, l);
  const double e = 1.0 / ((n - i) * (n - 1));

  SidesFn sides = [sum, blend_a, blend_b, i, e, n](int outer_res, int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    const double w_sum =
        querm_of_intersection_fused(repeat_bodies(sum, n - 1, sum, 0), i, outer, inner_res);
    const double w_a =
        querm_of_intersection_fused(repeat_bodies(blend_a, n - 1, blend_a, 0), i, outer,
                                    inner_res);
    const double w_b =
        querm_of_intersection_fused(repeat_bodies(blend_b, n - 1, blend_b, 0), i, outer,
                                    inner_res);
    return {std::pow(w_sum, e), std::pow(w_a, e) + std::pow(w_b, e)};
  };
  return finish_report("brunn_minkowski", "brunn-minkowski-intersection", rules, sides,
                       are_dilates(blend_a, blend_b));
}

IneqReport check_bm_corollary(const Body& k, const Body& l, double i, const CheckRules& rules) {
  IneqReport rep = check_brunn_minkowski(k, l, i, 1.0, rules);
  rep.name = "bm_corollary";
  rep.ref = "brunn-minkowski-sum";
  return rep;
}

IneqReport check_strengthened_form(const Body& k, const Body& l, double i, double alpha,
                                   const CheckRules& rules) {
  const int n = rules.n;
  require_order(i, n, "check_strengthened_form");
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw ParamError("check_strengthened_form: blend weight must lie in [0, 1]");
  }
  const Body blend_a = alpha == 1.0   ? k
                       : alpha == 0.0 ? l
                                      : radial_combine(alpha, k, 1.0 - alpha, l);
  const Body blend_b = alpha == 1.0   ? l
                       : alpha == 0.0 ? k
                                      : radial_combine(1.0 - alpha, k, alpha, l);
  const double e = 1.0 / ((n - i) * (n - 1));

  SidesFn sides = [k, l, blend_a, blend_b, i, e, n](int outer_res, int inner_res) -> Sides {
    const SphereRule outer = build_sphere_rule(n - 1, outer_res);
    auto power_term = [&](const Body& body) {
      const double w = querm_of_intersection_fused(repeat_bodies(body, n - 1, body, 0), i,
                                                   outer, inner_res);
      return std::pow(w, e);
    };
    return {power_term(blend_a) + power_term(blend_b), power_term(k) + power_term(l)};
  };
  const bool eq = alpha == 0.0 || alpha == 1.0 || are_dilates(k, l);
  return finish_report("strengthened_form", "brunn-minkowski-blend-chain", rules, sides, eq);
}

SearchResult search_extremal(const FamilyCheck& check,
                             std::span<const std::pair<double, double>> box, int budget,
                             uint64_t seed) {
  if (box.empty()) throw ParamError("search_extremal: empty parameter box");
  if (budget < 1) throw ParamError("search_extremal: budget must be >= 1");
  for (const auto& [lo, hi] : box) {
    if (!(lo < hi)) throw ParamError("search_extremal: box bounds must satisfy lo < hi");
  }
  const int d = static_cast<int>(box.size());

  SearchResult result;
  result.best_rel_slack = std::numeric_limits<double>::infinity();
  int evals = 0;

  auto clamp_point = [&](std::vector<double>& p) {
    for (int c = 0; c < d; ++c) p[c] = std::clamp(p[c], box[c].first, box[c].second);
  };

  auto eval_point = [&](std::vector<double> p) -> double {
    clamp_point(p);
    const IneqReport rep = check(p);
    ++evals;
    if (rep.rel_slack < result.best_rel_slack) {
      result.best_rel_slack = rep.rel_slack;
      result.best_params = p;
      result.best_report = rep;
    }
    if (rep.rel_slack < -rep.tol) result.violation = true;
    result.trace.push_back({evals, std::move(p), rep.rel_slack, result.best_rel_slack});
    return rep.rel_slack;
  };

  SplitMix64 rng(mix64(seed ^ 0x5361726368ull));
  double box_span = 0.0;
  for (const auto& [lo, hi] : box) box_span = std::max(box_span, hi - lo);
  const double step_tol = 1e-4 * box_span;

  for (int restart = 0; restart < 3 && evals < budget; ++restart) {
    std::vector<std::vector<double>> simplex;
    std::vector<double> fv;
    std::vector<double> start(d);
    for (int c = 0; c < d; ++c) {
      start[c] = restart == 0 ? 0.5 * (box[c].first + box[c].second)
                              : rng.uniform(box[c].first, box[c].second);
    }
    simplex.push_back(start);
    fv.push_back(eval_point(start));
    for (int c = 0; c < d && evals < budget; ++c) {
      std::vector<double> vert = start;
      const double width = box[c].second - box[c].first;
      vert[c] += (vert[c] + 0.25 * width <= box[c].second ? 0.25 : -0.25) * width;
      simplex.push_back(vert);
      fv.push_back(eval_point(vert));
    }
    if (simplex.size() < static_cast<size_t>(d) + 1) break;

    while (evals < budget) {
      // Order vertices, check the spread against the step tolerance.
      std::vector<size_t> idx(simplex.size());
      for (size_t c = 0; c < idx.size(); ++c) idx[c] = c;
      std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
      double spread = 0.0;
      for (size_t v = 1; v < simplex.size(); ++v) {
        for (int c = 0; c < d; ++c) {
          spread = std::max(spread, std::abs(simplex[idx[v]][c] - simplex[idx[0]][c]));
        }
      }
      if (spread < step_tol) break;

      const size_t worst = idx.back();
      const size_t second = idx[idx.size() - 2];
      const size_t best = idx.front();
      std::vector<double> centroid(d, 0.0);
      for (size_t v = 0; v < simplex.size(); ++v) {
        if (v == worst) continue;
        for (int c = 0; c < d; ++c) centroid[c] += simplex[v][c];
      }
      for (int c = 0; c < d; ++c) centroid[c] /= d;

      auto affine = [&](double t) {
        std::vector<double> p(d);
        for (int c = 0; c < d; ++c) p[c] = centroid[c] + t * (centroid[c] - simplex[worst][c]);
        clamp_point(p);
        return p;
      };

      const std::vector<double> refl = affine(1.0);
      const double f_refl = eval_point(refl);
      if (f_refl < fv[best] && evals < budget) {
        const std::vector<double> expa = affine(2.0);
        const double f_expa = eval_point(expa);
        if (f_expa < f_refl) {
          simplex[worst] = expa;
          fv[worst] = f_expa;
        } else {
          simplex[worst] = refl;
          fv[worst] = f_refl;
        }
      } else if (f_refl < fv[second]) {
        simplex[worst] = refl;
        fv[worst] = f_refl;
      } else if (evals < budget) {
        const std::vector<double> contr = affine(-0.5);
        const double f_contr = eval_point(contr);
        if (f_contr < fv[worst]) {
          simplex[worst] = contr;
          fv[worst] = f_contr;
        } else {
          for (size_t v = 0; v < simplex.size() && evals < budget; ++v) {
            if (v == best) continue;
            for (int c = 0; c < d; ++c) {
              simplex[v][c] = simplex[best][c] + 0.5 * (simplex[v][c] - simplex[best][c]);
            }
            fv[v] = eval_point(simplex[v]);
          }
        }
      }
    }
  }
  return result;
}

}  // namespace dqi
