#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "afval/hermitian.hpp"
#include "afval/sphere_function.hpp"

namespace afval {

class ConvexBody;
using BodyPtr = std::shared_ptr<const ConvexBody>;

struct Ball {
  Vec center;
  double radius;
};

/// {c + Q^{1/2} y : |y| <= 1}; support <c, u> + sqrt(u^T Q u).
struct Ellipsoid {
  Vec center;
  Mat shape;
};

/// Convex hull of the columns.
struct Polytope {
  Mat vertices;
};

/// Support <c, u> + r + sum_j eps_j f_j(u).
struct PerturbedBall {
  Vec center;
  double radius;
  std::vector<double> eps;
  std::vector<SphereFunctionPtr> terms;
  double certificate_min_eigenvalue;
};

struct MinkowskiCombo {
  std::vector<double> coefs;
  std::vector<BodyPtr> terms;
};

struct ConvexityCertificate {
  double min_eigenvalue;
  std::size_t nodes;
  bool passed;
};

class ConvexBody {
public:
  using Shape = std::variant<Ball, Ellipsoid, Polytope, PerturbedBall, MinkowskiCombo>;

  ConvexBody(int n, Shape shape);

  static ConvexBody ball(int n, double radius, Vec center = Vec());
  static ConvexBody ellipsoid(int n, Mat shape, Vec center = Vec());
  /// Axis-aligned ellipsoid with the given semi-axes.
  static ConvexBody ellipsoid_axes(int n, const Vec& semi_axes, Vec center = Vec());
  static ConvexBody polytope(int n, Mat vertices);
  static ConvexBody point(const Vec& p);
  static ConvexBody segment(const Vec& a, const Vec& b);
  /// [lo, hi]^{2n}.
  static ConvexBody cube(int n, double lo, double hi);
  /// Throws out_of_range when the convexity certificate fails.
  static ConvexBody perturbed_ball(int n, double radius, std::vector<double> eps,
                                   std::vector<SphereFunctionPtr> terms, Vec center = Vec());

  int n() const { return n_; }
  int real_dim() const { return 2 * n_; }
  const Shape& shape() const { return shape_; }
  std::string type_name() const;

  /// True when h_K is C^2 on the sphere (points count as smooth).
  bool smooth() const;
  bool is_polytope() const;

  double support(const Vec& u) const;
  double support_ext(std::span<const double> x) const;
  /// Throws unsupported_smoothness for non-smooth bodies.
  Jet support_ext(std::span<const Jet> x) const;
  SmallJet support_ext(std::span<const SmallJet> x) const;

  /// Matrix (r^i_j) of the support function in the adapted frame at u.
  Mat restricted_hessian(const Vec& u) const;

private:
  int n_;
  Shape shape_;
};

/// h_K as a SphereFunction.
class BodySupport final : public SphereFunction {
public:
  explicit BodySupport(BodyPtr body) : body_(std::move(body)) {}
  int real_dim() const override { return body_->real_dim(); }
  double eval(std::span<const double> x) const override { return body_->support_ext(x); }
  Jet eval(std::span<const Jet> x) const override { return body_->support_ext(x); }
  SmallJet eval(std::span<const SmallJet> x) const override { return body_->support_ext(x); }
  bool smooth() const override { return body_->smooth(); }
  const BodyPtr& body() const { return body_; }

private:
  BodyPtr body_;
};

SphereFunctionPtr support_function(BodyPtr body);

BodyPtr make_body(ConvexBody body);
/// sum_i coef_i K_i; throws invalid_argument for negative coefficients.
BodyPtr minkowski(std::vector<std::pair<double, BodyPtr>> terms);
BodyPtr scaled(double t, BodyPtr body);
BodyPtr translated(BodyPtr body, const Vec& v);

/// Leaf bodies of nested Minkowski combinations with accumulated coefficients.
std::vector<std::pair<double, const ConvexBody*>> minkowski_atoms(const ConvexBody& body);

/// Minimum eigenvalue of the restricted Hessian over a 10^4-node check grid.
ConvexityCertificate certify_convexity(const ConvexBody& body, int nodes = 10000);

/// vol_k(K|E) for k = dim E in {1, 2, 3}.
double proj_volume(const ConvexBody& body, const Subspace& e);

}  // namespace afval
