#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dqi/inequalities.hpp"
#include "dqi/mc.hpp"
#include "dqi/report.hpp"
#include "dqi/starbody.hpp"

namespace dqi {

/// Uniform direction on S^{n-1} from the given stream.
std::vector<double> random_unit_vector(SplitMix64& rng, int n);

/// Random star body from the standard test family: balls, dilates,
/// ellipsoids with axes in [0.5, 2], lp balls with p in {1, 1.5, 3},
/// bump bodies with base 1 and coefficients up to 0.3.
Body random_body(SplitMix64& rng, int n);

/// One check bound to concrete inputs, ready to run.
struct PlannedCheck {
  std::string name;
  RowParams params;
  std::function<IneqReport()> run;
};

/// All quadrature-backed checkers, in report order.
std::vector<std::string> sweep_checker_names();

/// tuples randomized instances of each named checker, seeded and ordered
/// deterministically. Row count is names.size() * tuples.
std::vector<PlannedCheck> make_random_sweep(const std::vector<std::string>& names, int tuples,
                                            uint64_t seed, const CheckRules& rules);

/// Instances whose inputs are all dilates of one random body (with matched
/// reference factors where the equality condition requires them), so every
/// checker is expected to certify equality.
std::vector<PlannedCheck> make_equality_sweep(int count, uint64_t seed,
                                              const CheckRules& rules);

/// Parameterized body family for extremal search.
struct SearchFamily {
  std::vector<std::pair<double, double>> box;
  FamilyCheck check;
};

/// Families: "ball_pair" (radius of the second ball), "ellipsoid_ratio"
/// (last axis of K), "ellipsoid_axes" (two free axes of K, n = 3), and
/// "bump_amp" (bump coefficient of K); L is the unit ball. Supported checks:
/// minkowski_mixed, bm_corollary, brunn_minkowski, af_product.
SearchFamily make_search_family(const std::string& kind, const std::string& check_name,
                                double i, int j, double alpha, const CheckRules& rules);

}  // namespace dqi
