#include "dqi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqi/errors.hpp"

namespace dqi {

double sphere_area(int m) {
  if (m < 1) throw ParamError("sphere_area: dimension must be >= 1");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int k) {
  if (k < 1) throw ParamError("gauss_legendre: need at least one node");
  std::vector<double> x(k, 0.0), w(k, 0.0);
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the (i+1)-th root of P_k.
    double z = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < k; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      dp = k * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[k - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    w[i] = wi;
    w[k - 1 - i] = wi;
  }
  if (k % 2 == 1) x[k / 2] = 0.0;
  return {std::move(x), std::move(w)};
}

SphereRule build_sphere_rule(int m, int resolution) {
  if (m < 1) throw ParamError("build_sphere_rule: sphere dimension must be >= 1");
  if (resolution < 1) throw ParamError("build_sphere_rule: resolution must be >= 1");

  SphereRule rule;
  rule.m = m;
  rule.resolution = resolution;

  if (m == 1) {
    const int count = 2 * resolution;
    rule.nodes.reserve(2 * count);
    rule.weights.assign(count, kTwoPi / count);
    for (int j = 0; j < count; ++j) {
      const double th = kTwoPi * j / count;
      rule.nodes.push_back(std::cos(th));
      rule.nodes.push_back(std::sin(th));
    }
  } else {
    const SphereRule sub = build_sphere_rule(m - 1, resolution);
    const auto [gx, gw] = gauss_legendre(resolution);
    rule.nodes.reserve(static_cast<size_t>(resolution) * sub.count() * (m + 1));
    rule.weights.reserve(static_cast<size_t>(resolution) * sub.count());
    for (int a = 0; a < resolution; ++a) {
      double t, s, wpol;
      if (m % 2 == 0) {
        // Even m: last coordinate t is the variable. The surface factor
        // (1-t^2)^{(m-2)/2} is a polynomial, so low-degree moments are exact.
        t = gx[a];
        s = std::sqrt(1.0 - t * t);
        double f = 1.0;
        for (int e = 0; e < (m - 2) / 2; ++e) f *= 1.0 - t * t;
        wpol = gw[a] * f;
      } else {
        // Odd m: integrate in the polar angle; sin^{m-1} is analytic there.
        const double th = 0.5 * kPi * (gx[a] + 1.0);
        t = std::cos(th);
        s = std::sin(th);
        double f = 1.0;
        for (int e = 0; e < m - 1; ++e) f *= s;
        wpol = gw[a] * 0.5 * kPi * f;
      }
      for (int q = 0; q < sub.count(); ++q) {
        const auto v = sub.node(q);
        for (int d = 0; d < m; ++d) rule.nodes.push_back(s * v[d]);
        rule.nodes.push_back(t);
        rule.weights.push_back(wpol * sub.weights[q]);
      }
    }
  }

  // Rescale so constants integrate exactly at every resolution.
  const double total = pairwise_sum(rule.weights);
  const double scale = sphere_area(m) / total;
  for (double& w : rule.weights) w *= scale;
  return rule;
}

namespace {

std::string describe_node(std::span<const double> node) {
  std::ostringstream os;
  os << "(";
  for (size_t d = 0; d < node.size(); ++d) {
    if (d) os << ", ";
    os << node[d];
  }
  os << ")";
  return os.str();
}

double weighted_sum(std::span<const double> nodes_flat, std::span<const double> weights,
                    int dim, const SphereFn& f) {
  const int count = static_cast<int>(weights.size());
  std::vector<double> contrib(count);
  for (int p = 0; p < count; ++p) {
    std::span<const double> node{nodes_flat.data() + static_cast<size_t>(p) * dim,
                                 static_cast<size_t>(dim)};
    const double fv = f(node);
    if (!std::isfinite(fv)) {
      throw EvalError("integrate: integrand non-finite at node " + std::to_string(p) +
                      " " + describe_node(node));
    }
    contrib[p] = weights[p] * fv;
  }
  return pairwise_sum(contrib);
}

}  // namespace

double integrate(const SphereRule& rule, const SphereFn& f) {
  return weighted_sum(rule.nodes, rule.weights, rule.m + 1, f);
}

double integrate(const SubsphereRule& rule, const SphereFn& f) {
  return weighted_sum(rule.nodes, rule.weights, rule.n, f);
}

double estimate_rule_error(int m, const SphereFn& f, int resolution) {
  if (resolution < 2) throw ParamError("estimate_rule_error: resolution must be >= 2");
  const double fine = integrate(build_sphere_rule(m, resolution), f);
  const double coarse = integrate(build_sphere_rule(m, resolution / 2), f);
  return std::abs(fine - coarse);
}

std::vector<double> complete_frame(std::span<const double> u_in) {
  const int n = static_cast<int>(u_in.size());
  if (n < 2) throw ParamError("complete_frame: need at least two coordinates");

  double norm2 = 0.0;
  for (double c : u_in) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ParamError("complete_frame: direction must be nonzero and finite");
  }
  std::vector<double> u(u_in.begin(), u_in.end());
  for (double& c : u) c /= norm;

  int skip = 0;
  for (int k = 1; k < n; ++k) {
    if (std::abs(u[k]) > std::abs(u[skip])) skip = k;
  }

  std::vector<double> basis;
  basis.reserve(static_cast<size_t>(n - 1) * n);
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) {
    if (k == skip) continue;
    std::fill(v.begin(), v.end(), 0.0);
    v[k] = 1.0;
    // Two Gram-Schmidt passes keep orthogonality near rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      double du = 0.0;
      for (int d = 0; d < n; ++d) du += v[d] * u[d];
      for (int d = 0; d < n; ++d) v[d] -= du * u[d];
      for (size_t row = 0; row * n < basis.size(); ++row) {
        const double* b = basis.data() + row * n;
        double db = 0.0;
        for (int d = 0; d < n; ++d) db += v[d] * b[d];
        for (int d = 0; d < n; ++d) v[d] -= db * b[d];
      }
    }
    double vn2 = 0.0;
    for (double c : v) vn2 += c * c;
    const double vn = std::sqrt(vn2);
    for (int d = 0; d < n; ++d) basis.push_back(v[d] / vn);
  }
  return basis;
}

SubsphereRule build_subsphere_rule(std::span<const double> u_in, const SphereRule& base) {
  const int n = static_cast<int>(u_in.size());
  if (n < 3) throw ParamError("build_subsphere_rule: ambient dimension must be >= 3");
  if (base.m != n - 2) {
    throw ParamError("build_subsphere_rule: base rule lives on S^" +
                     std::to_string(base.m) + ", expected S^" + std::to_string(n - 2));
  }
  double norm2 = 0.0;
  for (double c : u_in) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) {
    throw ParamError("build_subsphere_rule: direction must be unit length");
  }

  SubsphereRule rule;
  rule.n = n;
  rule.u.assign(u_in.begin(), u_in.end());
  for (double& c : rule.u) c /= norm;
  rule.basis = complete_frame(u_in);
  rule.weights = base.weights;
  rule.nodes.assign(static_cast<size_t>(base.count()) * n, 0.0);
  for (int p = 0; p < base.count(); ++p) {
    const auto v = base.node(p);
    double* out = rule.nodes.data() + static_cast<size_t>(p) * n;
    for (int row = 0; row < n - 1; ++row) {
      const double* b = rule.basis.data() + static_cast<size_t>(row) * n;
      const double c = v[row];
      for (int d = 0; d < n; ++d) out[d] += c * b[d];
    }
  }
  return rule;
}

SubsphereRule build_subsphere_rule(std::span<const double> u, int n, int resolution) {
  if (static_cast<int>(u.size()) != n) {
    throw ParamError("build_subsphere_rule: direction has wrong dimension");
  }
  return build_subsphere_rule(u, build_sphere_rule(n - 2, resolution));
}

}  // namespace dqi
