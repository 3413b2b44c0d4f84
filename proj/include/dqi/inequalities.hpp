#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dqi/starbody.hpp"

namespace dqi {

enum class Verdict { pass, fail, equality_confirmed };

std::string to_string(Verdict v);

/// Outcome of one inequality check. All inequalities are oriented as
/// lhs <= rhs, so slack = rhs - lhs and a genuine violation means
/// rel_slack < -tol. tol is relative (same normalization as rel_slack):
/// with the automatic policy it is ten times the larger half-resolution
/// difference of the two sides, floored at 1e-12.
struct IneqReport {
  std::string name;
  std::string ref;  // stable identifier used in report files
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double rel_slack = 0.0;
  double tol = 0.0;
  bool equality_expected = false;
  Verdict verdict = Verdict::pass;
  int outer_res = 0;
  int inner_res = 0;
  double err_lhs = 0.0;  // half-resolution movement of each side
  double err_rhs = 0.0;
  std::map<std::string, double> notes;
};

struct TolPolicy {
  bool automatic = true;
  double fixed = 0.0;

  static TolPolicy auto_policy() { return {true, 0.0}; }
  static TolPolicy fixed_policy(double v) { return {false, v}; }
};

struct CheckRules {
  int n = 3;
  int outer_res = 24;
  int inner_res = 24;
  TolPolicy tol{};
};

/// Numerical dilate test: the ratio of the radial functions is constant over
/// a fixed probe rule within rel_tol.
bool are_dilates(const Body& k, const Body& l, double rel_tol = 1e-9);

/// Two-term power mean inequality on nonnegative reals:
/// a^p c^(1-p) + b^p d^(1-p) <= (a+b)^p (c+d)^(1-p) for 0 < p < 1,
/// with equality iff a*d = b*c.
struct LemmaCInput {
  double a = 0.0, b = 0.0;  // >= 0
  double c = 1.0, d = 1.0;  // > 0
  double p = 0.5;           // in (0, 1)
};

IneqReport check_lemma_c(const LemmaCInput& in);

/// Product bound for dual mixed volumes: replacing the first r arguments by
/// r copies of each in turn can only grow the product.
IneqReport check_dual_af_volumes(std::span<const Body> bodies, int r, const CheckRules& rules);

/// Minkowski bound for the order-j mixed intersection body of (K, L).
IneqReport check_minkowski_mixed(const Body& k, const Body& l, double i, int j,
                                 const CheckRules& rules);

/// Minkowski bound for quermassintegral sums with a reference pair (D, lam_d*D).
IneqReport check_querm_sum_minkowski(const Body& k, const Body& l, const Body& d,
                                     double lambda_d, double i, int j, const CheckRules& rules);

/// Aleksandrov-Fenchel bound for mixed intersection bodies at depth r.
IneqReport check_af_intersection(std::span<const Body> bodies, double i, int r,
                                 const CheckRules& rules);

/// Full product form: the (n-1)-th power of the mixed quermassintegral is at
/// most the product over the plain intersection bodies.
IneqReport check_af_product(std::span<const Body> bodies, double i, const CheckRules& rules);

/// Hybrid form with j unit balls substituted into the argument list.
IneqReport check_af_hybrid(const Body& k, const Body& l, double i, int j,
                           const CheckRules& rules);

/// Brunn-Minkowski bound for the intersection body of a radial sum: the
/// (1/((n-i)(n-1)))-th powers of the blended quermassintegrals dominate that
/// of the full sum. equality_expected iff the two blends are dilates.
IneqReport check_brunn_minkowski(const Body& k, const Body& l, double i, double alpha,
                                 const CheckRules& rules);

/// The alpha = 1 case of the Brunn-Minkowski bound (same evaluations).
IneqReport check_bm_corollary(const Body& k, const Body& l, double i, const CheckRules& rules);

/// Chains the blended bound against the unblended one: the blended right
/// side never exceeds the plain sum of the single-body terms.
IneqReport check_strengthened_form(const Body& k, const Body& l, double i, double alpha,
                                   const CheckRules& rules);

struct SearchTracePoint {
  int eval = 0;
  std::vector<double> params;
  double rel_slack = 0.0;
  double best_so_far = 0.0;
};

struct SearchResult {
  std::vector<double> best_params;
  double best_rel_slack = 0.0;
  bool violation = false;  // some report had rel_slack < -tol
  IneqReport best_report;
  std::vector<SearchTracePoint> trace;
};

using FamilyCheck = std::function<IneqReport(std::span<const double>)>;

/// Derivative-free minimization of rel_slack over a parameter box: simplex
/// reflections with up to three seeded restarts, stopping a restart when the
/// simplex spread falls below 1e-4 of the box or the evaluation budget is
/// spent. A negative best beyond tolerance is reported as a violation, never
/// silently clamped.
SearchResult search_extremal(const FamilyCheck& check,
                             std::span<const std::pair<double, double>> box, int budget,
                             uint64_t seed);

}  // namespace dqi
