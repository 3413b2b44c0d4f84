#include "dqi/intersect.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "dqi/errors.hpp"

namespace dqi {

namespace {

void require_section_bodies(std::span<const Body> bodies, const char* who) {
  if (bodies.empty()) throw ParamError(std::string(who) + ": need at least one body");
  const int n = bodies.front().dim();
  if (n < 3) throw ParamError(std::string(who) + ": ambient dimension must be > 2");
  for (const Body& b : bodies) {
    if (b.dim() != n) throw ParamError(std::string(who) + ": bodies have mixed dimensions");
  }
  if (static_cast<int>(bodies.size()) != n - 1) {
    throw ParamError(std::string(who) + ": need exactly n-1 = " + std::to_string(n - 1) +
                     " bodies, got " + std::to_string(bodies.size()));
  }
}

// Shared core of the section integrals; every path that evaluates a section
// dual mixed volume funnels through here so fused and unfused computations
// agree bit for bit.
double section_dmv_on(const SubsphereRule& sub, std::span<const Body> bodies) {
  const int n = sub.n;
  std::vector<double> contrib(sub.count());
  for (int p = 0; p < sub.count(); ++p) {
    const auto w = sub.node(p);
    double prod = 1.0;
    for (const Body& b : bodies) prod *= b.radial(w);
    contrib[p] = sub.weights[p] * prod;
  }
  return pairwise_sum(contrib) / (n - 1);
}

struct DirectionKey {
  std::vector<uint64_t> bits;
  bool operator==(const DirectionKey& o) const { return bits == o.bits; }
};

struct DirectionKeyHash {
  size_t operator()(const DirectionKey& k) const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : k.bits) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return static_cast<size_t>(h);
  }
};

class SectionProductField : public ComputedRadial {
 public:
  SectionProductField(std::vector<Body> bodies, int inner_resolution)
      : bodies_(std::move(bodies)),
        inner_resolution_(inner_resolution),
        n_(bodies_.front().dim()),
        base_(build_sphere_rule(n_ - 2, inner_resolution)) {}

  double radial(std::span<const double> u) const override {
    DirectionKey key;
    key.bits.reserve(u.size());
    for (double c : u) key.bits.push_back(std::bit_cast<uint64_t>(c));
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    const SubsphereRule sub = build_subsphere_rule(u, base_);
    const double v = section_dmv_on(sub, bodies_);
    {
      std::lock_guard<std::mutex> lock(mu_);
      memo_.emplace(std::move(key), v);
    }
    return v;
  }

  int dim() const override { return n_; }

  std::string describe() const override {
    std::ostringstream os;
    os << "intersection_body(";
    for (size_t b = 0; b < bodies_.size(); ++b) os << (b ? "," : "") << bodies_[b].describe();
    os << ";res=" << inner_resolution_ << ")";
    return os.str();
  }

 private:
  std::vector<Body> bodies_;
  int inner_resolution_;
  int n_;
  SphereRule base_;
  mutable std::mutex mu_;
  mutable std::unordered_map<DirectionKey, double, DirectionKeyHash> memo_;
};

}  // namespace

SectionContext make_section_context(std::span<const double> u, std::vector<Body> bodies,
                                    int resolution) {
  require_section_bodies(bodies, "make_section_context");
  const int n = bodies.front().dim();
  if (static_cast<int>(u.size()) != n) {
    throw ParamError("make_section_context: direction dimension mismatch");
  }
  SectionContext ctx;
  ctx.u.assign(u.begin(), u.end());
  ctx.sub = build_subsphere_rule(u, n, resolution);
  ctx.bodies = std::move(bodies);
  return ctx;
}

double section_radial(const Body& k, const SectionContext& ctx, std::span<const double> w) {
  if (w.size() != ctx.u.size()) throw ParamError("section_radial: dimension mismatch");
  double d = 0.0;
  for (size_t c = 0; c < w.size(); ++c) d += w[c] * ctx.u[c];
  if (std::abs(d) > 1e-9) {
    throw ParamError("section_radial: direction is off the subsphere, |w.u| = " +
                     std::to_string(std::abs(d)));
  }
  return k.radial(w);
}

double section_volume(const Body& k, const SectionContext& ctx) {
  const std::vector<Body> copies(static_cast<size_t>(k.dim() - 1), k);
  return section_dmv_on(ctx.sub, copies);
}

double section_dual_mixed_volume(const SectionContext& ctx) {
  return section_dmv_on(ctx.sub, ctx.bodies);
}

Body mixed_intersection_body(std::vector<Body> bodies, int inner_resolution) {
  require_section_bodies(bodies, "mixed_intersection_body");
  if (inner_resolution < 1) {
    throw ParamError("mixed_intersection_body: inner resolution must be >= 1");
  }
  return Body::computed(
      std::make_shared<SectionProductField>(std::move(bodies), inner_resolution));
}

Body intersection_body(const Body& k, int inner_resolution) {
  return mixed_intersection_body(std::vector<Body>(static_cast<size_t>(k.dim() - 1), k),
                                 inner_resolution);
}

Body ith_intersection_body(const Body& k, const Body& l, int j, int inner_resolution) {
  if (k.dim() != l.dim()) throw ParamError("ith_intersection_body: dimension mismatch");
  const int n = k.dim();
  if (j < 0 || j > n - 1) {
    throw ParamError("ith_intersection_body: order must satisfy 0 <= j <= n-1");
  }
  std::vector<Body> bodies;
  bodies.reserve(static_cast<size_t>(n - 1));
  for (int c = 0; c < n - 1 - j; ++c) bodies.push_back(k);
  for (int c = 0; c < j; ++c) bodies.push_back(l);
  return mixed_intersection_body(std::move(bodies), inner_resolution);
}

double querm_of_intersection_fused(std::span<const Body> bodies, double i,
                                   const SphereRule& outer, int inner_resolution) {
  require_section_bodies(bodies, "querm_of_intersection_fused");
  const int n = bodies.front().dim();
  if (outer.m + 1 != n) throw ParamError("querm_of_intersection_fused: outer rule dimension mismatch");
  if (!(i >= 0.0) || !(i < n)) {
    throw ParamError("querm_of_intersection_fused: order must satisfy 0 <= i < n");
  }
  if (inner_resolution < 1) {
    throw ParamError("querm_of_intersection_fused: inner resolution must be >= 1");
  }
  const SphereRule base = build_sphere_rule(n - 2, inner_resolution);
  std::vector<double> contrib(outer.count());
  for (int p = 0; p < outer.count(); ++p) {
    const SubsphereRule sub = build_subsphere_rule(outer.node(p), base);
    const double s = section_dmv_on(sub, bodies);
    if (!std::isfinite(s) || !(s > 0.0)) {
      throw EvalError("querm_of_intersection_fused: section value non-positive at outer node " +
                      std::to_string(p));
    }
    contrib[p] = outer.weights[p] * std::pow(s, n - i);
  }
  return pairwise_sum(contrib) / n;
}

}  // namespace dqi
