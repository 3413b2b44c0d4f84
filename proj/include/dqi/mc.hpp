#pragma once

#include <cstdint>
#include <span>

#include "dqi/quadrature.hpp"
#include "dqi/starbody.hpp"

namespace dqi {

/// SplitMix64 finalizer; also used to derive independent per-index streams.
uint64_t mix64(uint64_t x);

/// Small counter-based generator. Cheap to construct, so every Monte Carlo
/// sample gets its own stream keyed by (seed, sample index); estimates are
/// then independent of evaluation order.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in the open interval (0, 1).
  double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller, spare value cached.
  double normal();

  /// Uniform integer in [0, bound).
  uint64_t below(uint64_t bound) { return next() % bound; }

 private:
  bool has_spare_ = false;
  double spare_ = 0.0;
};

SplitMix64 sample_stream(uint64_t seed, uint64_t index);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int64_t samples = 0;
  uint64_t seed = 0;
};

/// Plain Monte Carlo over S^m with uniform points from normalized Gaussian
/// vectors. value = |S^m| * mean(f), std_error = sample sd / sqrt(samples).
/// Deterministic for fixed (seed, samples).
McEstimate mc_sphere_integrate(const SphereFn& f, int m, int64_t samples, uint64_t seed);

/// Monte Carlo estimate of the central section volume of K at direction u.
McEstimate mc_section_volume(const Body& k, std::span<const double> u, int64_t samples,
                             uint64_t seed);

/// Monte Carlo estimate of the dual mixed volume of n bodies.
McEstimate mc_dual_mixed_volume(std::span<const Body> bodies, int64_t samples, uint64_t seed);

}  // namespace dqi
