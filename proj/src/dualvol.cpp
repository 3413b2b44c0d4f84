#include "dqi/dualvol.hpp"

#include <cmath>
#include <vector>

#include "dqi/errors.hpp"

namespace dqi {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int t = 0; t < std::min(k, n - k); ++t) v = v * (n - t) / (t + 1);
  return v;
}

namespace {

void require_ambient(const SphereRule& rule, int n, const char* who) {
  if (rule.m + 1 != n) {
    throw ParamError(std::string(who) + ": rule is on S^" + std::to_string(rule.m) +
                     " but bodies live in dimension " + std::to_string(n));
  }
}

}  // namespace

double dual_mixed_volume(std::span<const Body> bodies, const SphereRule& rule) {
  const int n = rule.m + 1;
  if (static_cast<int>(bodies.size()) != n) {
    throw ParamError("dual_mixed_volume: need exactly " + std::to_string(n) + " bodies, got " +
                     std::to_string(bodies.size()));
  }
  for (const Body& b : bodies) require_ambient(rule, b.dim(), "dual_mixed_volume");
  const std::vector<Body> bs(bodies.begin(), bodies.end());
  const double total = integrate(rule, [&bs](std::span<const double> u) {
    double prod = 1.0;
    for (const Body& b : bs) prod *= b.radial(u);
    return prod;
  });
  return total / n;
}

double dual_mixed_volume_i(const Body& k, const Body& l, double i, const SphereRule& rule) {
  const int n = rule.m + 1;
  require_ambient(rule, k.dim(), "dual_mixed_volume_i");
  require_ambient(rule, l.dim(), "dual_mixed_volume_i");
  if (!(i >= 0.0) || !(i <= n)) {
    throw ParamError("dual_mixed_volume_i: order must satisfy 0 <= i <= n");
  }
  const double total = integrate(rule, [&](std::span<const double> u) {
    return std::pow(k.radial(u), n - i) * std::pow(l.radial(u), i);
  });
  return total / n;
}

double dual_quermassintegral(const Body& k, double i, const SphereRule& rule) {
  const int n = rule.m + 1;
  require_ambient(rule, k.dim(), "dual_quermassintegral");
  if (!(i >= 0.0) || !(i < n)) {
    throw ParamError("dual_quermassintegral: order must satisfy 0 <= i < n");
  }
  const double total = integrate(rule, [&](std::span<const double> u) {
    return std::pow(k.radial(u), n - i);
  });
  return total / n;
}

double dual_querm_sum(const Body& k, const Body& d, double i, const SphereRule& rule) {
  const int n = rule.m + 1;
  if (!(i >= 0.0) || !(i <= n - 1)) {
    throw ParamError("dual_querm_sum: order must satisfy 0 <= i <= n-1");
  }
  return dual_quermassintegral(k, i, rule) + dual_quermassintegral(d, i, rule);
}

ExpansionReport expansion_check(const Body& k, const Body& l, double lam, double mu,
                                const SphereRule& rule) {
  const int n = rule.m + 1;
  ExpansionReport rep;
  rep.direct = dual_quermassintegral(radial_combine(lam, k, mu, l), 0.0, rule);
  std::vector<double> terms(n + 1);
  for (int t = 0; t <= n; ++t) {
    terms[t] = binomial(n, t) * std::pow(lam, n - t) * std::pow(mu, t) *
               dual_mixed_volume_i(k, l, t, rule);
  }
  rep.expanded = pairwise_sum(terms);
  rep.difference = std::abs(rep.direct - rep.expanded);
  return rep;
}

}  // namespace dqi
