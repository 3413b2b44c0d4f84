#include "dqi/family.hpp"

#include <cmath>

#include "dqi/errors.hpp"

namespace dqi {

std::vector<double> random_unit_vector(SplitMix64& rng, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  while (true) {
    double norm2 = 0.0;
    for (double& c : v) {
      c = rng.normal();
      norm2 += c * c;
    }
    const double norm = std::sqrt(norm2);
    if (norm > 1e-12) {
      for (double& c : v) c /= norm;
      return v;
    }
  }
}

Body random_body(SplitMix64& rng, int n) {
  Body body = [&]() -> Body {
    switch (rng.below(4)) {
      case 0:
        return Body::ball(n, rng.uniform(0.5, 2.0));
      case 1: {
        std::vector<double> axes(static_cast<size_t>(n));
        for (double& a : axes) a = rng.uniform(0.5, 2.0);
        return Body::ellipsoid(std::move(axes));
      }
      case 2: {
        const double ps[3] = {1.0, 1.5, 3.0};
        return Body::lp_ball(n, ps[rng.below(3)], rng.uniform(0.5, 2.0));
      }
      default: {
        std::vector<BumpTerm> terms(1 + rng.below(2));
        for (BumpTerm& t : terms) {
          t.c = rng.uniform(0.0, 0.3);
          t.v = random_unit_vector(rng, n);
          t.m = static_cast<int>(1 + rng.below(3));
        }
        return Body::bump(n, 1.0, std::move(terms));
      }
    }
  }();
  if (rng.below(4) == 0) body = dilate(rng.uniform(0.5, 2.0), body);
  return body;
}

namespace {

uint64_t hash_string(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

double random_order(SplitMix64& rng, int n) {
  const double i = rng.uniform(0.0, n - 1e-6);
  return rng.below(2) == 0 ? std::floor(i) : i;
}

std::vector<Body> random_bodies(SplitMix64& rng, int n, int count) {
  std::vector<Body> out;
  out.reserve(static_cast<size_t>(count));
  for (int c = 0; c < count; ++c) out.push_back(random_body(rng, n));
  return out;
}

PlannedCheck plan_random(const std::string& name, SplitMix64 rng, const CheckRules& rules) {
  const int n = rules.n;
  PlannedCheck plan;
  plan.name = name;
  if (name == "dual_af") {
    const auto bodies = random_bodies(rng, n, n);
    const int r = static_cast<int>(1 + rng.below(static_cast<uint64_t>(n)));
    plan.params.r = r;
    plan.run = [bodies, r, rules] { return check_dual_af_volumes(bodies, r, rules); };
  } else if (name == "minkowski_mixed") {
    const Body k = random_body(rng, n), l = random_body(rng, n);
    const double i = random_order(rng, n);
    const int j = static_cast<int>(1 + rng.below(static_cast<uint64_t>(std::max(1, n - 2))));
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, i, j, rules] { return check_minkowski_mixed(k, l, i, j, rules); };
  } else if (name == "querm_sum_minkowski") {
    const Body k = random_body(rng, n), l = random_body(rng, n), d = random_body(rng, n);
    const double lambda_d = rng.uniform(0.5, 2.0);
    const double i = random_order(rng, n);
    const int j = static_cast<int>(1 + rng.below(static_cast<uint64_t>(std::max(1, n - 2))));
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, d, lambda_d, i, j, rules] {
      return check_querm_sum_minkowski(k, l, d, lambda_d, i, j, rules);
    };
  } else if (name == "af_intersection") {
    const auto bodies = random_bodies(rng, n, n - 1);
    const double i = random_order(rng, n);
    const int r = static_cast<int>(1 + rng.below(static_cast<uint64_t>(n - 1)));
    plan.params.i = i;
    plan.params.r = r;
    plan.run = [bodies, i, r, rules] { return check_af_intersection(bodies, i, r, rules); };
  } else if (name == "af_product") {
    const auto bodies = random_bodies(rng, n, n - 1);
    const double i = random_order(rng, n);
    plan.params.i = i;
    plan.run = [bodies, i, rules] { return check_af_product(bodies, i, rules); };
  } else if (name == "af_hybrid") {
    const Body k = random_body(rng, n), l = random_body(rng, n);
    const double i = random_order(rng, n);
    const int j = n > 3 ? static_cast<int>(rng.below(static_cast<uint64_t>(n - 2))) : 0;
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, i, j, rules] { return check_af_hybrid(k, l, i, j, rules); };
  } else if (name == "brunn_minkowski") {
    const Body k = random_body(rng, n), l = random_body(rng, n);
    const double i = random_order(rng, n);
    const double alpha = rng.uniform(0.0, 1.0);
    plan.params.i = i;
    plan.params.alpha = alpha;
    plan.run = [k, l, i, alpha, rules] { return check_brunn_minkowski(k, l, i, alpha, rules); };
  } else if (name == "bm_corollary") {
    const Body k = random_body(rng, n), l = random_body(rng, n);
    const double i = random_order(rng, n);
    plan.params.i = i;
    plan.params.alpha = 1.0;
    plan.run = [k, l, i, rules] { return check_bm_corollary(k, l, i, rules); };
  } else if (name == "strengthened_form") {
    const Body k = random_body(rng, n), l = random_body(rng, n);
    const double i = random_order(rng, n);
    const double alpha = rng.uniform(0.0, 1.0);
    plan.params.i = i;
    plan.params.alpha = alpha;
    plan.run = [k, l, i, alpha, rules] { return check_strengthened_form(k, l, i, alpha, rules); };
  } else {
    throw ConfigError("unknown checker \"" + name + "\"");
  }
  return plan;
}

PlannedCheck plan_equality(const std::string& name, SplitMix64 rng, const CheckRules& rules) {
  const int n = rules.n;
  PlannedCheck plan;
  plan.name = name;
  const Body base = random_body(rng, n);
  const double l1 = rng.uniform(0.5, 2.0);
  const double l2 = rng.uniform(0.5, 2.0);
  const Body k = dilate(l1, base), l = dilate(l2, base);
  const double i = random_order(rng, n);

  if (name == "dual_af") {
    std::vector<Body> bodies;
    for (int c = 0; c < n; ++c) bodies.push_back(dilate(rng.uniform(0.5, 2.0), base));
    const int r = static_cast<int>(1 + rng.below(static_cast<uint64_t>(n)));
    plan.params.r = r;
    plan.run = [bodies, r, rules] { return check_dual_af_volumes(bodies, r, rules); };
  } else if (name == "minkowski_mixed") {
    const int j = static_cast<int>(1 + rng.below(static_cast<uint64_t>(std::max(1, n - 2))));
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, i, j, rules] { return check_minkowski_mixed(k, l, i, j, rules); };
  } else if (name == "querm_sum_minkowski") {
    const Body d = dilate(rng.uniform(0.5, 2.0), base);
    const double lambda_d = l2 / l1;  // matches the equality condition
    const int j = static_cast<int>(1 + rng.below(static_cast<uint64_t>(std::max(1, n - 2))));
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, d, lambda_d, i, j, rules] {
      return check_querm_sum_minkowski(k, l, d, lambda_d, i, j, rules);
    };
  } else if (name == "af_intersection") {
    std::vector<Body> bodies;
    for (int c = 0; c < n - 1; ++c) bodies.push_back(dilate(rng.uniform(0.5, 2.0), base));
    const int r = static_cast<int>(1 + rng.below(static_cast<uint64_t>(n - 1)));
    plan.params.i = i;
    plan.params.r = r;
    plan.run = [bodies, i, r, rules] { return check_af_intersection(bodies, i, r, rules); };
  } else if (name == "af_product") {
    std::vector<Body> bodies;
    for (int c = 0; c < n - 1; ++c) bodies.push_back(dilate(rng.uniform(0.5, 2.0), base));
    plan.params.i = i;
    plan.run = [bodies, i, rules] { return check_af_product(bodies, i, rules); };
  } else if (name == "af_hybrid") {
    const int j = n > 3 ? static_cast<int>(rng.below(static_cast<uint64_t>(n - 2))) : 0;
    plan.params.i = i;
    plan.params.j = j;
    plan.run = [k, l, i, j, rules] { return check_af_hybrid(k, l, i, j, rules); };
  } else if (name == "brunn_minkowski") {
    const double alpha = rng.uniform(0.0, 1.0);
    plan.params.i = i;
    plan.params.alpha = alpha;
    plan.run = [k, l, i, alpha, rules] { return check_brunn_minkowski(k, l, i, alpha, rules); };
  } else if (name == "bm_corollary") {
    plan.params.i = i;
    plan.params.alpha = 1.0;
    plan.run = [k, l, i, rules] { return check_bm_corollary(k, l, i, rules); };
  } else if (name == "strengthened_form") {
    const double alpha = rng.uniform(0.0, 1.0);
    plan.params.i = i;
    plan.params.alpha = alpha;
    plan.run = [k, l, i, alpha, rules] { return check_strengthened_form(k, l, i, alpha, rules); };
  } else {
    throw ConfigError("unknown checker \"" + name + "\"");
  }
  return plan;
}

}  // namespace

std::vector<std::string> sweep_checker_names() {
  return {"dual_af",       "minkowski_mixed", "querm_sum_minkowski",
          "af_intersection", "af_product",      "af_hybrid",
          "brunn_minkowski", "bm_corollary",    "strengthened_form"};
}

std::vector<PlannedCheck> make_random_sweep(const std::vector<std::string>& names, int tuples,
                                            uint64_t seed, const CheckRules& rules) {
  if (tuples < 1) throw ConfigError("sweep: tuples must be >= 1");
  std::vector<PlannedCheck> plans;
  plans.reserve(static_cast<size_t>(tuples) * names.size());
  for (int t = 0; t < tuples; ++t) {
    for (const std::string& name : names) {
      SplitMix64 rng(mix64(mix64(seed) ^ hash_string(name) ^ static_cast<uint64_t>(t)));
      plans.push_back(plan_random(name, rng, rules));
    }
  }
  return plans;
}

std::vector<PlannedCheck> make_equality_sweep(int count, uint64_t seed,
                                              const CheckRules& rules) {
  if (count < 1) throw ConfigError("equality sweep: count must be >= 1");
  const std::vector<std::string> names = sweep_checker_names();
  std::vector<PlannedCheck> plans;
  plans.reserve(static_cast<size_t>(count));
  for (int c = 0; c < count; ++c) {
    const std::string& name = names[static_cast<size_t>(c) % names.size()];
    SplitMix64 rng(mix64(mix64(seed) ^ hash_string(name) ^ (0x45ull + c)));
    plans.push_back(plan_equality(name, rng, rules));
  }
  return plans;
}

SearchFamily make_search_family(const std::string& kind, const std::string& check_name,
                                double i, int j, double alpha, const CheckRules& rules) {
  const int n = rules.n;
  const Body ball = Body::ball(n, 1.0);

  auto bind_check = [check_name, i, j, alpha, rules](const Body& k,
                                                     const Body& l) -> IneqReport {
    if (check_name == "minkowski_mixed") return check_minkowski_mixed(k, l, i, j, rules);
    if (check_name == "bm_corollary") return check_bm_corollary(k, l, i, rules);
    if (check_name == "brunn_minkowski") return check_brunn_minkowski(k, l, i, alpha, rules);
    if (check_name == "af_product") {
      std::vector<Body> bodies;
      for (int c = 0; c < rules.n - 2; ++c) bodies.push_back(k);
      bodies.push_back(l);
      return check_af_product(bodies, i, rules);
    }
    throw ConfigError("search: checker \"" + check_name + "\" is not searchable");
  };

  SearchFamily fam;
  if (kind == "ball_pair") {
    fam.box = {{0.5, 2.0}};
    fam.check = [bind_check, ball, n](std::span<const double> p) {
      return bind_check(ball, Body::ball(n, p[0]));
    };
  } else if (kind == "ellipsoid_ratio") {
    fam.box = {{0.5, 2.0}};
    fam.check = [bind_check, ball, n](std::span<const double> p) {
      std::vector<double> axes(static_cast<size_t>(n), 1.0);
      axes.back() = p[0];
      return bind_check(Body::ellipsoid(std::move(axes)), ball);
    };
  } else if (kind == "ellipsoid_axes") {
    fam.box = {{0.5, 2.0}, {0.5, 2.0}};
    fam.check = [bind_check, ball, n](std::span<const double> p) {
      std::vector<double> axes(static_cast<size_t>(n), 1.0);
      axes[static_cast<size_t>(n) - 2] = p[0];
      axes[static_cast<size_t>(n) - 1] = p[1];
      return bind_check(Body::ellipsoid(std::move(axes)), ball);
    };
  } else if (kind == "bump_amp") {
    fam.box = {{0.0, 0.3}};
    fam.check = [bind_check, ball, n](std::span<const double> p) {
      std::vector<double> axis(static_cast<size_t>(n), 0.0);
      axis.back() = 1.0;
      return bind_check(Body::bump(n, 1.0, {{p[0], axis, 2}}), ball);
    };
  } else {
    throw ConfigError("search: unknown family \"" + kind + "\"");
  }
  return fam;
}

}  // namespace dqi
