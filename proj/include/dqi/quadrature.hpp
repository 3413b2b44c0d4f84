#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dqi {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Surface measure of the unit sphere S^m embedded in R^{m+1}.
double sphere_area(int m);

/// Deterministic pairwise (tree) summation. The result depends only on the
/// order of the inputs, never on how work is scheduled.
double pairwise_sum(std::span<const double> xs);

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Nodes ascend; weights are positive and symmetric.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int k);

using SphereFn = std::function<double(std::span<const double>)>;

/// Quadrature rule on S^m.
///
/// m = 1 is the 2*resolution point uniform rule on the circle. m >= 2 is a
/// product of a Gauss-Legendre polar factor (resolution points) with the
/// S^{m-1} rule of the same resolution. Weights are rescaled at the end so
/// that constants integrate to sphere_area(m) exactly, which keeps error
/// estimates meaningful at coarse resolutions.
struct SphereRule {
  int m = 0;
  int resolution = 0;
  std::vector<double> nodes;    // count() rows of m+1 coordinates, unit length
  std::vector<double> weights;  // count() positive weights

  int count() const { return static_cast<int>(weights.size()); }
  std::span<const double> node(int p) const {
    return {nodes.data() + static_cast<size_t>(p) * (m + 1),
            static_cast<size_t>(m + 1)};
  }
};

SphereRule build_sphere_rule(int m, int resolution);

/// Weighted sum of f over the rule nodes, reduced pairwise.
/// Throws EvalError if f is non-finite at some node.
double integrate(const SphereRule& rule, const SphereFn& f);

/// |I(resolution) - I(resolution/2)| for f on S^m: a practical error gauge
/// used to derive tolerances for everything built on top of the rules.
double estimate_rule_error(int m, const SphereFn& f, int resolution);

/// Orthonormal completion of the unit vector u to a basis of u^perp.
/// Gram-Schmidt over the standard basis vectors, skipping the one most
/// parallel to u. Returns (n-1) rows of n coordinates. The construction is
/// even in u: complete_frame(-u) yields bit-identical rows, so the great
/// subsphere of -u coincides with that of u node for node.
std::vector<double> complete_frame(std::span<const double> u);

/// Rule on the great subsphere S^{n-1} ∩ u^perp, obtained by mapping an
/// S^{n-2} rule through an orthonormal frame for u^perp.
struct SubsphereRule {
  int n = 0;
  std::vector<double> u;        // unit normal, n coordinates
  std::vector<double> basis;    // (n-1) rows of n coordinates
  std::vector<double> nodes;    // count() rows of n coordinates, all ⊥ u
  std::vector<double> weights;  // copied from the base rule

  int count() const { return static_cast<int>(weights.size()); }
  std::span<const double> node(int p) const {
    return {nodes.data() + static_cast<size_t>(p) * n, static_cast<size_t>(n)};
  }
};

SubsphereRule build_subsphere_rule(std::span<const double> u, const SphereRule& base);
SubsphereRule build_subsphere_rule(std::span<const double> u, int n, int resolution);

double integrate(const SubsphereRule& rule, const SphereFn& f);

}  // namespace dqi
