#pragma once

#include <span>

#include "dqi/quadrature.hpp"
#include "dqi/starbody.hpp"

namespace dqi {

double binomial(int n, int k);

/// (1/n) * integral over S^{n-1} of the product of the n radial functions.
double dual_mixed_volume(std::span<const Body> bodies, const SphereRule& rule);

/// (1/n) * integral of rho(K)^{n-i} * rho(L)^i. i may be real, 0 <= i <= n.
double dual_mixed_volume_i(const Body& k, const Body& l, double i, const SphereRule& rule);

/// (1/n) * integral of rho(K)^{n-i}. i may be real, 0 <= i < n;
/// i = 0 is the volume.
double dual_quermassintegral(const Body& k, double i, const SphereRule& rule);

/// Sum of the order-i quermassintegrals of K and D; requires 0 <= i <= n-1.
double dual_querm_sum(const Body& k, const Body& d, double i, const SphereRule& rule);

struct ExpansionReport {
  double direct = 0.0;    // volume of the radial combination
  double expanded = 0.0;  // binomial sum of the dual mixed volumes
  double difference = 0.0;
};

/// Checks the polynomial expansion of the volume of lam*K + mu*L in the
/// radial sense against the binomial sum over dual_mixed_volume_i.
ExpansionReport expansion_check(const Body& k, const Body& l, double lam, double mu,
                                const SphereRule& rule);

}  // namespace dqi
