#pragma once

#include <span>
#include <vector>

#include "dqi/quadrature.hpp"
#include "dqi/starbody.hpp"

namespace dqi {

/// A direction u together with the quadrature rule on the great subsphere
/// S^{n-1} ∩ u^perp and the bodies being sectioned.
struct SectionContext {
  std::vector<double> u;
  SubsphereRule sub;
  std::vector<Body> bodies;  // n-1 bodies of dimension n
};

SectionContext make_section_context(std::span<const double> u, std::vector<Body> bodies,
                                    int resolution);

/// rho(K, w) for w on the subsphere of ctx (|w . u| <= 1e-9 required).
double section_radial(const Body& k, const SectionContext& ctx, std::span<const double> w);

/// (n-1)-dimensional volume of the central section K ∩ u^perp:
/// (1/(n-1)) * integral of rho(K, w)^{n-1} over the subsphere.
double section_volume(const Body& k, const SectionContext& ctx);

/// Dual mixed volume of the n-1 sections in ctx:
/// (1/(n-1)) * integral of the product of the radial functions.
double section_dual_mixed_volume(const SectionContext& ctx);

/// Mixed intersection body of n-1 star bodies: the star body whose radial
/// value at u is the dual mixed volume of the sections at u. The result is a
/// lazy leaf; each radial evaluation runs the inner quadrature at the given
/// resolution (memoized per direction, which never changes the value).
Body mixed_intersection_body(std::vector<Body> bodies, int inner_resolution);

/// Intersection body IK: all n-1 arguments equal to K. rho(IK, u) is the
/// section volume of K at u.
Body intersection_body(const Body& k, int inner_resolution);

/// Order-j mixed intersection body: n-1-j copies of K and j copies of L.
Body ith_intersection_body(const Body& k, const Body& l, int j, int inner_resolution);

/// Order-i dual quermassintegral of the mixed intersection body of the given
/// n-1 bodies, computed as one fused double integral: the outer rule walks
/// S^{n-1}, the inner rule evaluates the section dual mixed volume at each
/// outer node. Agrees with the unfused path through
/// dual_quermassintegral(mixed_intersection_body(...)) up to rounding.
double querm_of_intersection_fused(std::span<const Body> bodies, double i,
                                   const SphereRule& outer, int inner_resolution);

}  // namespace dqi
