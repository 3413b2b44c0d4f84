#include "dqi/starbody.hpp"

#include <cmath>
#include <sstream>

namespace dqi {

struct Body::Node {
  enum class Kind { ball, ellipsoid, lp_ball, bump, combine, dilate, computed };
  Kind kind;
  int dim = 0;
  double a = 0.0;  // ball radius | lp exponent | combine lam | dilate lam
  double b = 0.0;  // lp scale | combine mu
  std::vector<double> axes;
  double c0 = 0.0;
  std::vector<BumpTerm> terms;
  std::shared_ptr<const Node> k, l;
  std::shared_ptr<const ComputedRadial> field;

  double eval(std::span<const double> u) const;
  std::string describe() const;
};

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t d = 0; d < a.size(); ++d) s += a[d] * b[d];
  return s;
}

std::string format_direction(std::span<const double> u) {
  std::ostringstream os;
  os << "(";
  for (size_t d = 0; d < u.size(); ++d) os << (d ? ", " : "") << u[d];
  os << ")";
  return os.str();
}

}  // namespace

double Body::Node::eval(std::span<const double> u) const {
  const Node& nd = *this;
  switch (nd.kind) {
    case Kind::ball:
      return nd.a;
    case Kind::ellipsoid: {
      double q = 0.0;
      for (size_t d = 0; d < nd.axes.size(); ++d) {
        const double r = u[d] / nd.axes[d];
        q += r * r;
      }
      return 1.0 / std::sqrt(q);
    }
    case Kind::lp_ball: {
      double q = 0.0;
      for (double c : u) q += std::pow(std::abs(c), nd.a);
      return nd.b * std::pow(q, -1.0 / nd.a);
    }
    case Kind::bump: {
      double v = nd.c0;
      for (const BumpTerm& t : nd.terms) {
        const double d = dot(u, t.v);
        double p = 1.0;
        const double d2 = d * d;
        for (int e = 0; e < t.m; ++e) p *= d2;
        v += t.c * p;
      }
      return v;
    }
    case Kind::combine:
      return nd.a * nd.k->eval(u) + nd.b * nd.l->eval(u);
    case Kind::dilate:
      return nd.a * nd.k->eval(u);
    case Kind::computed:
      return nd.field->radial(u);
  }
  throw EvalError("eval_radial: corrupt body node");
}

std::string Body::Node::describe() const {
  const Node& nd = *this;
  std::ostringstream os;
  switch (nd.kind) {
    case Kind::ball:
      os << "ball(r=" << nd.a << ")";
      break;
    case Kind::ellipsoid: {
      os << "ellipsoid(";
      for (size_t d = 0; d < nd.axes.size(); ++d) os << (d ? "," : "") << nd.axes[d];
      os << ")";
      break;
    }
    case Kind::lp_ball:
      os << "lpball(p=" << nd.a << ",s=" << nd.b << ")";
      break;
    case Kind::bump:
      os << "bump(c0=" << nd.c0 << "," << nd.terms.size() << " terms)";
      break;
    case Kind::combine:
      os << "combine(" << nd.a << "*" << nd.k->describe() << " + " << nd.b << "*"
         << nd.l->describe() << ")";
      break;
    case Kind::dilate:
      os << "dilate(" << nd.a << "," << nd.k->describe() << ")";
      break;
    case Kind::computed:
      os << nd.field->describe();
      break;
  }
  return os.str();
}

Body Body::ball(int n, double radius) {
  if (n < 2) throw ParamError("ball: dimension must be >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParamError("ball: radius must be positive");
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::ball;
  nd->dim = n;
  nd->a = radius;
  return Body(std::move(nd));
}

Body Body::ellipsoid(std::vector<double> axes) {
  if (axes.size() < 2) throw ParamError("ellipsoid: need at least two axes");
  for (double a : axes) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParamError("ellipsoid: axes must be positive");
  }
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::ellipsoid;
  nd->dim = static_cast<int>(axes.size());
  nd->axes = std::move(axes);
  return Body(std::move(nd));
}

Body Body::lp_ball(int n, double p, double scale) {
  if (n < 2) throw ParamError("lp_ball: dimension must be >= 2");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParamError("lp_ball: exponent must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParamError("lp_ball: scale must be positive");
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::lp_ball;
  nd->dim = n;
  nd->a = p;
  nd->b = scale;
  return Body(std::move(nd));
}

Body Body::bump(int n, double c0, std::vector<BumpTerm> terms) {
  if (n < 2) throw ParamError("bump: dimension must be >= 2");
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw ParamError("bump: base level must be positive");
  for (BumpTerm& t : terms) {
    if (!(t.c >= 0.0) || !std::isfinite(t.c)) throw ParamError("bump: coefficients must be >= 0");
    if (t.m < 1) throw ParamError("bump: exponent half must be >= 1");
    if (static_cast<int>(t.v.size()) != n) throw ParamError("bump: direction dimension mismatch");
    double norm2 = 0.0;
    for (double c : t.v) norm2 += c * c;
    const double norm = std::sqrt(norm2);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ParamError("bump: direction must be nonzero");
    for (double& c : t.v) c /= norm;
  }
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::bump;
  nd->dim = n;
  nd->c0 = c0;
  nd->terms = std::move(terms);
  return Body(std::move(nd));
}

Body Body::combine(double lam, const Body& k, double mu, const Body& l) {
  if (!(lam >= 0.0) || !(mu >= 0.0) || !std::isfinite(lam) || !std::isfinite(mu)) {
    throw ParamError("radial_combine: weights must be finite and >= 0");
  }
  if (lam == 0.0 && mu == 0.0) {
    throw ParamError("radial_combine: weights must not both be zero (degenerate body)");
  }
  if (k.dim() != l.dim()) throw ParamError("radial_combine: dimension mismatch");
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::combine;
  nd->dim = k.dim();
  nd->a = lam;
  nd->b = mu;
  nd->k = k.node_;
  nd->l = l.node_;
  return Body(std::move(nd));
}

Body Body::dilated(double lam, const Body& k) {
  if (!(lam > 0.0) || !std::isfinite(lam)) throw ParamError("dilate: factor must be positive");
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::dilate;
  nd->dim = k.dim();
  nd->a = lam;
  nd->k = k.node_;
  return Body(std::move(nd));
}

Body Body::computed(std::shared_ptr<const ComputedRadial> field) {
  if (!field) throw ParamError("computed body: null radial field");
  auto nd = std::make_shared<Node>();
  nd->kind = Node::Kind::computed;
  nd->dim = field->dim();
  nd->field = std::move(field);
  return Body(std::move(nd));
}

int Body::dim() const { return node_->dim; }

double Body::radial(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != node_->dim) {
    throw ParamError("eval_radial: direction has dimension " + std::to_string(u.size()) +
                     ", body lives in dimension " + std::to_string(node_->dim));
  }
  double norm2 = 0.0;
  for (double c : u) norm2 += c * c;
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 2.5e-9) {
    throw ParamError("eval_radial: direction must be unit length, got |u|^2 = " +
                     std::to_string(norm2));
  }
  const double v = node_->eval(u);
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw StarBodyError("radial function non-positive at direction " + format_direction(u) +
                        " for " + describe());
  }
  return v;
}

std::string Body::describe() const { return node_->describe(); }

double eval_radial(const Body& k, std::span<const double> u) { return k.radial(u); }

Body radial_combine(double lam, const Body& k, double mu, const Body& l) {
  return Body::combine(lam, k, mu, l);
}

Body dilate(double lam, const Body& k) { return Body::dilated(lam, k); }

StarBodyReport validate_star_body(const Body& k, const SphereRule& rule) {
  if (rule.m + 1 != k.dim()) throw ParamError("validate_star_body: rule dimension mismatch");
  StarBodyReport rep;
  rep.min_radial = 0.0;
  rep.positive = false;
  for (int p = 0; p < rule.count(); ++p) {
    const auto u = rule.node(p);
    double v;
    try {
      v = k.radial(u);
    } catch (const StarBodyError&) {
      rep.min_radial = 0.0;
      rep.argmin.assign(u.begin(), u.end());
      rep.positive = false;
      return rep;
    }
    if (p == 0 || v < rep.min_radial) {
      rep.min_radial = v;
      rep.argmin.assign(u.begin(), u.end());
    }
  }
  rep.positive = rule.count() > 0 && rep.min_radial > 0.0;
  return rep;
}

}  // namespace dqi
