#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dqi/errors.hpp"
#include "dqi/quadrature.hpp"

namespace dqi {

/// Radial field evaluated by some other component (used for intersection
/// bodies, whose radial function is itself an integral).
class ComputedRadial {
 public:
  virtual ~ComputedRadial() = default;
  virtual double radial(std::span<const double> u) const = 0;
  virtual int dim() const = 0;
  virtual std::string describe() const = 0;
};

/// One additive term c * (u . v)^(2m) of a bump body.
struct BumpTerm {
  double c = 0.0;
  std::vector<double> v;  // normalized at construction
  int m = 1;
};

/// Immutable star body described by its radial function rho(K, u) > 0 on the
/// unit sphere. Values share subtrees; copying is cheap and thread-safe.
class Body {
 public:
  static Body ball(int n, double radius);
  static Body ellipsoid(std::vector<double> axes);
  static Body lp_ball(int n, double p, double scale);
  static Body bump(int n, double c0, std::vector<BumpTerm> terms);
  static Body combine(double lam, const Body& k, double mu, const Body& l);
  static Body dilated(double lam, const Body& k);
  static Body computed(std::shared_ptr<const ComputedRadial> field);

  int dim() const;
  /// rho(K, u) for unit u (|u| = 1 within 1e-9). Throws StarBodyError if the
  /// evaluated expression is non-positive or non-finite at u.
  double radial(std::span<const double> u) const;
  std::string describe() const;

 private:
  struct Node;
  explicit Body(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

double eval_radial(const Body& k, std::span<const double> u);

/// Radial Minkowski combination: rho = lam * rho(K,.) + mu * rho(L,.).
/// Requires lam, mu >= 0, not both zero.
Body radial_combine(double lam, const Body& k, double mu, const Body& l);

/// Dilate by lam > 0: rho = lam * rho(K,.).
Body dilate(double lam, const Body& k);

struct StarBodyReport {
  double min_radial = 0.0;
  std::vector<double> argmin;
  bool positive = false;
};

/// Scan rho over the rule nodes; reports the minimum and where it occurs.
StarBodyReport validate_star_body(const Body& k, const SphereRule& rule);

/// Shared parameters of the inequality family.
struct GlobalParams {
  int n = 3;         // ambient dimension, n > 2
  double i = 0.0;    // quermassintegral order, 0 <= i < n
  int j = 1;         // mixture count
  int r = 1;         // Aleksandrov-Fenchel depth
  double alpha = 1.0;  // blend weight in [0, 1]
};

}  // namespace dqi
