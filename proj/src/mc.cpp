#include "dqi/mc.hpp"

#include <cmath>
#include <vector>

#include "dqi/errors.hpp"

namespace dqi {

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = kTwoPi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

SplitMix64 sample_stream(uint64_t seed, uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull)));
}

namespace {

// Streaming mean and variance. For bit-identical samples the accumulated
// spread stays exactly zero, so constant integrands report std_error = 0.
struct Welford {
  int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d0 = x - mean;
    mean += d0 / count;
    m2 += d0 * (x - mean);
  }

  double sd() const { return count > 1 ? std::sqrt(m2 / (count - 1)) : 0.0; }
};

void gaussian_direction(SplitMix64& rng, std::span<double> out) {
  while (true) {
    double norm2 = 0.0;
    for (double& c : out) {
      c = rng.normal();
      norm2 += c * c;
    }
    const double norm = std::sqrt(norm2);
    if (norm > 1e-12) {
      for (double& c : out) c /= norm;
      return;
    }
  }
}

McEstimate finish(const Welford& w, uint64_t seed) {
  McEstimate est;
  est.value = w.mean;
  est.std_error = w.sd() / std::sqrt(static_cast<double>(w.count));
  est.samples = w.count;
  est.seed = seed;
  return est;
}

}  // namespace

McEstimate mc_sphere_integrate(const SphereFn& f, int m, int64_t samples, uint64_t seed) {
  if (m < 1) throw ParamError("mc_sphere_integrate: dimension must be >= 1");
  if (samples < 2) throw ParamError("mc_sphere_integrate: need at least 2 samples");
  const double area = sphere_area(m);
  Welford w;
  std::vector<double> x(static_cast<size_t>(m) + 1);
  for (int64_t idx = 0; idx < samples; ++idx) {
    SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(idx));
    gaussian_direction(rng, x);
    const double fv = f(x);
    if (!std::isfinite(fv)) {
      throw EvalError("mc_sphere_integrate: integrand non-finite at sample " +
                      std::to_string(idx));
    }
    w.add(area * fv);
  }
  return finish(w, seed);
}

McEstimate mc_section_volume(const Body& k, std::span<const double> u, int64_t samples,
                             uint64_t seed) {
  const int n = k.dim();
  if (static_cast<int>(u.size()) != n) {
    throw ParamError("mc_section_volume: direction dimension mismatch");
  }
  if (n < 3) throw ParamError("mc_section_volume: ambient dimension must be > 2");
  if (samples < 2) throw ParamError("mc_section_volume: need at least 2 samples");
  const std::vector<double> basis = complete_frame(u);
  const double area = sphere_area(n - 2);
  Welford wf;
  std::vector<double> g(static_cast<size_t>(n) - 1);
  std::vector<double> w(static_cast<size_t>(n));
  for (int64_t idx = 0; idx < samples; ++idx) {
    SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(idx));
    gaussian_direction(rng, g);
    std::fill(w.begin(), w.end(), 0.0);
    for (int row = 0; row < n - 1; ++row) {
      const double* b = basis.data() + static_cast<size_t>(row) * n;
      for (int d = 0; d < n; ++d) w[d] += g[row] * b[d];
    }
    const double rho = k.radial(w);
    wf.add(area * std::pow(rho, n - 1) / (n - 1));
  }
  return finish(wf, seed);
}

McEstimate mc_dual_mixed_volume(std::span<const Body> bodies, int64_t samples, uint64_t seed) {
  if (bodies.empty()) throw ParamError("mc_dual_mixed_volume: need bodies");
  const int n = bodies.front().dim();
  for (const Body& b : bodies) {
    if (b.dim() != n) throw ParamError("mc_dual_mixed_volume: bodies have mixed dimensions");
  }
  if (static_cast<int>(bodies.size()) != n) {
    throw ParamError("mc_dual_mixed_volume: need exactly n bodies");
  }
  if (samples < 2) throw ParamError("mc_dual_mixed_volume: need at least 2 samples");
  const double area = sphere_area(n - 1);
  Welford w;
  std::vector<double> x(static_cast<size_t>(n));
  for (int64_t idx = 0; idx < samples; ++idx) {
    SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(idx));
    gaussian_direction(rng, x);
    double prod = 1.0;
    for (const Body& b : bodies) prod *= b.radial(x);
    w.add(area * prod / n);
  }
  return finish(w, seed);
}

}  // namespace dqi
