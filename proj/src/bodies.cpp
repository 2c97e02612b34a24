#include "afval/bodies.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/hull.hpp"
#include "afval/sphere_grid.hpp"

namespace afval {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec center_or_zero(Vec c, int n) {
  if (c.size() == 0) return Vec::Zero(2 * n);
  if (c.size() != 2 * n) throw Error(ErrorKind::dimension_mismatch, "center must lie in R^{2n}");
  return c;
}

template <class T>
T dot_ext(const Vec& v, std::span<const T> x) {
  T s = x[0] * v[0];
  for (std::size_t i = 1; i < x.size(); ++i) s = s + x[i] * v[static_cast<Eigen::Index>(i)];
  return s;
}

template <class T>
T quad_ext(const Mat& q, std::span<const T> x) {
  const auto d = static_cast<Eigen::Index>(x.size());
  T s = x[0] * 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    T row = x[0] * q(i, 0);
    for (Eigen::Index j = 1; j < d; ++j) row = row + x[j] * q(i, j);
    s = s + x[i] * row;
  }
  return s;
}

template <class T>
T support_impl(const ConvexBody& body, std::span<const T> x) {
  using std::sqrt;
  return std::visit(
      overloaded{
          [&](const Ball& b) { return dot_ext(b.center, x) + sqrt(squared_norm(x)) * b.radius; },
          [&](const Ellipsoid& e) { return dot_ext(e.center, x) + sqrt(quad_ext(e.shape, x)); },
          [&](const Polytope& p) -> T {
            if constexpr (std::is_same_v<T, double>) {
              double best = -std::numeric_limits<double>::infinity();
              for (Eigen::Index c = 0; c < p.vertices.cols(); ++c)
                best = std::max(best, dot_ext<double>(p.vertices.col(c), x));
              return best;
            } else {
              if (p.vertices.cols() != 1)
                throw Error(ErrorKind::unsupported_smoothness, "polytope support is not C^2");
              return dot_ext<T>(p.vertices.col(0), x);
            }
          },
          [&](const PerturbedBall& b) {
            T s = dot_ext(b.center, x) + sqrt(squared_norm(x)) * b.radius;
            for (std::size_t j = 0; j < b.terms.size(); ++j) s = s + b.terms[j]->eval(x) * b.eps[j];
            return s;
          },
          [&](const MinkowskiCombo& m) {
            T s = x[0] * 0.0;
            for (std::size_t j = 0; j < m.terms.size(); ++j)
              s = s + support_impl<T>(*m.terms[j], x) * m.coefs[j];
            return s;
          }},
      body.shape());
}

}  // namespace

ConvexBody::ConvexBody(int n, Shape shape) : n_(n), shape_(std::move(shape)) {
  if (n < 1) throw Error(ErrorKind::unsupported_dimension, "bodies need n >= 1");
  const int d = 2 * n;
  std::visit(overloaded{
                 [&](const Ball& b) {
                   if (b.center.size() != d) throw Error(ErrorKind::dimension_mismatch, "ball center size");
                   if (!(b.radius > 0.0)) throw Error(ErrorKind::out_of_range, "radius must be > 0");
                 },
                 [&](const Ellipsoid& e) {
                   if (e.center.size() != d || e.shape.rows() != d || e.shape.cols() != d)
                     throw Error(ErrorKind::dimension_mismatch, "ellipsoid shape must be 2n x 2n");
                   if ((e.shape - e.shape.transpose()).cwiseAbs().maxCoeff() > 1e-12 * e.shape.cwiseAbs().maxCoeff())
                     throw Error(ErrorKind::invalid_argument, "ellipsoid shape must be symmetric");
                   Eigen::LLT<Mat> llt(e.shape);
                   if (llt.info() != Eigen::Success)
                     throw Error(ErrorKind::not_positive_definite, "ellipsoid shape must be positive definite");
                 },
                 [&](const Polytope& p) {
                   if (p.vertices.rows() != d) throw Error(ErrorKind::dimension_mismatch, "vertex size");
                   if (p.vertices.cols() < 1) throw Error(ErrorKind::invalid_argument, "polytope needs a vertex");
                 },
                 [&](const PerturbedBall& b) {
                   if (b.center.size() != d) throw Error(ErrorKind::dimension_mismatch, "center size");
                   if (!(b.radius > 0.0)) throw Error(ErrorKind::out_of_range, "radius must be > 0");
                   if (b.eps.size() != b.terms.size())
                     throw Error(ErrorKind::invalid_argument, "one eps per perturbation term");
                   for (const auto& t : b.terms) {
                     if (!t || t->real_dim() != d)
                       throw Error(ErrorKind::dimension_mismatch, "perturbation lives on another sphere");
                     if (!t->smooth()) throw Error(ErrorKind::unsupported_smoothness, "perturbation must be smooth");
                   }
                 },
                 [&](const MinkowskiCombo& m) {
                   if (m.terms.empty() || m.terms.size() != m.coefs.size())
                     throw Error(ErrorKind::invalid_argument, "Minkowski combination needs terms");
                   for (std::size_t j = 0; j < m.terms.size(); ++j) {
                     if (!(m.coefs[j] >= 0.0))
                       throw Error(ErrorKind::invalid_argument, "Minkowski coefficients must be >= 0");
                     if (!m.terms[j] || m.terms[j]->n() != n)
                       throw Error(ErrorKind::dimension_mismatch, "Minkowski terms in different dimensions");
                   }
                 }},
             shape_);
}

ConvexBody ConvexBody::ball(int n, double radius, Vec center) {
  return ConvexBody(n, Ball{center_or_zero(std::move(center), n), radius});
}

ConvexBody ConvexBody::ellipsoid(int n, Mat shape, Vec center) {
  return ConvexBody(n, Ellipsoid{center_or_zero(std::move(center), n), std::move(shape)});
}

ConvexBody ConvexBody::ellipsoid_axes(int n, const Vec& semi_axes, Vec center) {
  if (semi_axes.size() != 2 * n) throw Error(ErrorKind::dimension_mismatch, "need 2n semi-axes");
  if ((semi_axes.array() <= 0.0).any()) throw Error(ErrorKind::out_of_range, "semi-axes must be > 0");
  return ellipsoid(n, Mat(semi_axes.array().square().matrix().asDiagonal()), std::move(center));
}

ConvexBody ConvexBody::polytope(int n, Mat vertices) { return ConvexBody(n, Polytope{std::move(vertices)}); }

ConvexBody ConvexBody::point(const Vec& p) {
  if (p.size() % 2 != 0) throw Error(ErrorKind::dimension_mismatch, "point must lie in R^{2n}");
  return polytope(static_cast<int>(p.size() / 2), Mat(p));
}

ConvexBody ConvexBody::segment(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.size() % 2 != 0) throw Error(ErrorKind::dimension_mismatch, "segment ends");
  Mat v(a.size(), 2);
  v.col(0) = a;
  v.col(1) = b;
  return polytope(static_cast<int>(a.size() / 2), std::move(v));
}

ConvexBody ConvexBody::cube(int n, double lo, double hi) {
  if (!(hi > lo)) throw Error(ErrorKind::out_of_range, "cube needs lo < hi");
  const int d = 2 * n;
  const Eigen::Index count = Eigen::Index(1) << d;
  Mat v(d, count);
  for (Eigen::Index c = 0; c < count; ++c)
    for (int i = 0; i < d; ++i) v(i, c) = ((c >> i) & 1) ? hi : lo;
  return polytope(n, std::move(v));
}

ConvexBody ConvexBody::perturbed_ball(int n, double radius, std::vector<double> eps,
                                      std::vector<SphereFunctionPtr> terms, Vec center) {
  PerturbedBall pb{center_or_zero(std::move(center), n), radius, std::move(eps), std::move(terms), 0.0};
  ConvexBody body(n, pb);
  const auto cert = certify_convexity(body);
  if (!cert.passed) {
    std::ostringstream os;
    os << "perturbed ball fails the convexity certificate (min eigenvalue " << cert.min_eigenvalue << ")";
    throw Error(ErrorKind::out_of_range, os.str());
  }
  pb.certificate_min_eigenvalue = cert.min_eigenvalue;
  return ConvexBody(n, std::move(pb));
}

std::string ConvexBody::type_name() const {
  return std::visit(overloaded{[](const Ball&) { return "ball"; }, [](const Ellipsoid&) { return "ellipsoid"; },
                               [](const Polytope&) { return "polytope"; },
                               [](const PerturbedBall&) { return "perturbed_ball"; },
                               [](const MinkowskiCombo&) { return "minkowski"; }},
                    shape_);
}

bool ConvexBody::smooth() const {
  return std::visit(overloaded{[](const Polytope& p) { return p.vertices.cols() == 1; },
                               [](const MinkowskiCombo& m) {
                                 for (std::size_t j = 0; j < m.terms.size(); ++j)
                                   if (m.coefs[j] != 0.0 && !m.terms[j]->smooth()) return false;
                                 return true;
                               },
                               [](const auto&) { return true; }},
                    shape_);
}

bool ConvexBody::is_polytope() const {
  return std::visit(overloaded{[](const Polytope&) { return true; },
                               [](const MinkowskiCombo& m) {
                                 for (const auto& t : m.terms)
                                   if (!t->is_polytope()) return false;
                                 return true;
                               },
                               [](const auto&) { return false; }},
                    shape_);
}

double ConvexBody::support(const Vec& u) const { return support_ext(std::span<const double>(u.data(), u.size())); }

double ConvexBody::support_ext(std::span<const double> x) const { return support_impl<double>(*this, x); }

Jet ConvexBody::support_ext(std::span<const Jet> x) const { return support_impl<Jet>(*this, x); }
SmallJet ConvexBody::support_ext(std::span<const SmallJet> x) const { return support_impl<SmallJet>(*this, x); }

Mat ConvexBody::restricted_hessian(const Vec& u) const {
  if (!smooth()) throw Error(ErrorKind::unsupported_smoothness, type_name() + " has no C^2 support function");
  const BodySupport h(std::make_shared<const ConvexBody>(*this));
  return afval::restricted_hessian(h, u);
}

SphereFunctionPtr support_function(BodyPtr body) { return std::make_shared<const BodySupport>(std::move(body)); }

BodyPtr make_body(ConvexBody body) { return std::make_shared<const ConvexBody>(std::move(body)); }

BodyPtr minkowski(std::vector<std::pair<double, BodyPtr>> terms) {
  if (terms.empty()) throw Error(ErrorKind::invalid_argument, "Minkowski combination needs terms");
  MinkowskiCombo m;
  for (auto& [c, b] : terms) {
    if (!(c >= 0.0)) throw Error(ErrorKind::invalid_argument, "Minkowski coefficients must be >= 0");
    m.coefs.push_back(c);
    m.terms.push_back(std::move(b));
  }
  const int n = m.terms.front()->n();
  return make_body(ConvexBody(n, std::move(m)));
}

BodyPtr scaled(double t, BodyPtr body) {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "scale factor must be > 0");
  return minkowski({{t, std::move(body)}});
}

BodyPtr translated(BodyPtr body, const Vec& v) {
  return minkowski({{1.0, std::move(body)}, {1.0, make_body(ConvexBody::point(v))}});
}

std::vector<std::pair<double, const ConvexBody*>> minkowski_atoms(const ConvexBody& body) {
  std::vector<std::pair<double, const ConvexBody*>> out;
  if (const auto* m = std::get_if<MinkowskiCombo>(&body.shape())) {
    for (std::size_t j = 0; j < m->terms.size(); ++j) {
      if (m->coefs[j] == 0.0) continue;
      for (const auto& [c, b] : minkowski_atoms(*m->terms[j])) out.emplace_back(m->coefs[j] * c, b);
    }
  } else {
    out.emplace_back(1.0, &body);
  }
  return out;
}

ConvexityCertificate certify_convexity(const ConvexBody& body, int nodes) {
  const int n = body.n();
  SphereGrid grid;
  if (n == 2) {
    const int r = std::max(10, static_cast<int>(std::lround(std::cbrt(double(nodes)))));
    grid = build_grid(2, GridMethod::product, r);
  } else {
    grid = build_grid(n, GridMethod::monte_carlo, nodes, 0xC0FFEEULL);
  }
  const BodySupport h(std::make_shared<const ConvexBody>(body));
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mat r = restricted_hessian(h, grid.node(i));
    Eigen::SelfAdjointEigenSolver<Mat> es(r, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()[0]);
  }
  return {lo, grid.size(), lo >= 0.0};
}

// ---------------------------------------------------------------------------
// projections

namespace {

struct SplitProjection {
  std::vector<std::pair<double, const ConvexBody*>> smooth;
  std::vector<std::pair<double, const ConvexBody*>> polys;
};

SplitProjection split(const ConvexBody& body) {
  SplitProjection s;
  for (const auto& a : minkowski_atoms(body)) {
    if (std::holds_alternative<Polytope>(a.second->shape())) s.polys.push_back(a);
    else s.smooth.push_back(a);
  }
  return s;
}

template <class T>
T smooth_support(const SplitProjection& s, std::span<const T> x) {
  T acc = x[0] * 0.0;
  for (const auto& [c, b] : s.smooth) acc = acc + b->support_ext(x) * c;
  return acc;
}

// projected vertex set of the polytope part of the body onto the frame
template <int D>
std::vector<Eigen::Matrix<double, D, 1>> projected_polytope(const SplitProjection& s, const Mat& frame) {
  using P = Eigen::Matrix<double, D, 1>;
  std::vector<P> acc{P::Zero()};
  for (const auto& [c, b] : s.polys) {
    const auto& v = std::get<Polytope>(b->shape()).vertices;
    std::vector<P> pts;
    for (Eigen::Index k = 0; k < v.cols(); ++k) pts.push_back(c * (frame.transpose() * v.col(k)));
    if constexpr (D == 2) {
      pts = convex_hull_2d(pts).vertices;
      acc = minkowski_vertices_2d(acc, pts);
    } else {
      pts = convex_hull_3d(pts).vertices;
      acc = minkowski_vertices_3d(acc, pts);
    }
  }
  return acc;
}

// h_S restricted to E, evaluated at y in R^k (the frame maps E coordinates to R^{2n})
template <class T>
T restricted_support(const SplitProjection& s, const Mat& frame, const std::vector<T>& y) {
  const auto d = frame.rows();
  std::vector<T> x;
  x.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    T xi = y[0] * frame(i, 0);
    for (std::size_t j = 1; j < y.size(); ++j) xi = xi + y[j] * frame(i, static_cast<Eigen::Index>(j));
    x.push_back(xi);
  }
  return smooth_support<T>(s, std::span<const T>(x));
}

// Smooth part made only of balls and ellipsoids, pulled back to E:
// h(y) = <lin, y> + sum_j c_j sqrt(y^T Q_j y).
struct ProjectedQuadrics {
  bool ok = false;
  Vec lin;
  std::vector<std::pair<double, Mat>> quads;

  ProjectedQuadrics(const SplitProjection& s, const Mat& frame) {
    const auto k = frame.cols();
    lin = Vec::Zero(k);
    for (const auto& [c, b] : s.smooth) {
      if (const auto* ball = std::get_if<Ball>(&b->shape())) {
        lin += c * (frame.transpose() * ball->center);
        quads.emplace_back(c * ball->radius, frame.transpose() * frame);
      } else if (const auto* e = std::get_if<Ellipsoid>(&b->shape())) {
        lin += c * (frame.transpose() * e->center);
        quads.emplace_back(c, frame.transpose() * e->shape * frame);
      } else {
        return;
      }
    }
    ok = true;
  }

  double value(const Vec& y, Vec* grad = nullptr, Mat* hess = nullptr) const {
    double v = lin.dot(y);
    if (grad) *grad = lin;
    if (hess) *hess = Mat::Zero(y.size(), y.size());
    for (const auto& [c, q] : quads) {
      const Vec qy = q * y;
      const double r = std::sqrt(y.dot(qy));
      v += c * r;
      if (grad) *grad += (c / r) * qy;
      if (hess) *hess += (c / r) * (q - qy * qy.transpose() / (r * r));
    }
    return v;
  }
};

double smooth_area_trapezoid(const ProjectedQuadrics& q, int points) {
  double sum = 0.0;
  Vec y(2), g;
  for (int i = 0; i < points; ++i) {
    const double ph = 2.0 * pi * i / points;
    y << std::cos(ph), std::sin(ph);
    const double h = q.value(y, &g);
    const double dh = -y[1] * g[0] + y[0] * g[1];
    sum += h * h - dh * dh;
  }
  return 0.5 * sum * 2.0 * pi / points;
}

double smooth_area_trapezoid(const SplitProjection& s, const Mat& frame, int points) {
  std::vector<double> terms(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double ph = 2.0 * pi * i / points;
    const double c = std::cos(ph), sn = std::sin(ph);
    const std::array<double, 1> g0{-sn}, g1{c};
    std::vector<SmallJet> y{SmallJet::affine(c, g0), SmallJet::affine(sn, g1)};
    const SmallJet h = restricted_support(s, frame, y);
    terms[static_cast<std::size_t>(i)] = h.value() * h.value() - h.grad(0) * h.grad(0);
  }
  double sum = 0.0;
  for (double t : terms) sum += t;
  return 0.5 * sum * 2.0 * pi / points;
}

double smooth_area(const SplitProjection& s, const Mat& frame) {
  const ProjectedQuadrics q(s, frame);
  if (q.ok) {
    const double coarse = smooth_area_trapezoid(q, 128);
    const double fine = smooth_area_trapezoid(q, 256);
    return (4.0 * fine - coarse) / 3.0;
  }
  const double coarse = smooth_area_trapezoid(s, frame, 128);
  const double fine = smooth_area_trapezoid(s, frame, 256);
  return (4.0 * fine - coarse) / 3.0;
}

// Linear map that makes the smooth part roughly round; the smooth quadratures
// lose accuracy fast on elongated bodies. Exact for a single ellipsoid.
Mat rounding_map(const SplitProjection& s, const Mat& frame) {
  const auto k = frame.cols();
  Mat m = Mat::Zero(k, k);
  auto add_sqrt = [&](double c, const Mat& q) {
    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    m += c * es.operatorSqrt();
  };
  for (const auto& [c, b] : s.smooth) {
    if (const auto* ball = std::get_if<Ball>(&b->shape())) add_sqrt(c * ball->radius, frame.transpose() * frame);
    else if (const auto* e = std::get_if<Ellipsoid>(&b->shape())) add_sqrt(c, frame.transpose() * e->shape * frame);
    else if (const auto* p = std::get_if<PerturbedBall>(&b->shape())) add_sqrt(c * p->radius, frame.transpose() * frame);
  }
  if (!(m.trace() > 0.0)) return Mat::Identity(k, k);
  return m;
}

double proj_area_core(const SplitProjection& s, const Mat& frame) {
  double area = 0.0;
  Hull2 poly;
  if (!s.polys.empty()) {
    poly = convex_hull_2d(projected_polytope<2>(s, frame));
    area += poly.area;
  }
  if (s.smooth.empty()) return area;
  area += smooth_area(s, frame);
  // 2 A(P, S) = sum over edges of h_S(normal) * length
  for (const auto& e : poly.edges) {
    const std::vector<double> y{e.normal.x(), e.normal.y()};
    area += restricted_support(s, frame, y) * e.measure;
  }
  return area;
}

// after rounding, any remaining quadric anisotropy calls for the fine S^2 rule
bool anisotropic(const SplitProjection& s, const Mat& frame) {
  for (const auto& [c, b] : s.smooth) {
    Mat q;
    if (std::holds_alternative<Ellipsoid>(b->shape())) q = frame.transpose() * std::get<Ellipsoid>(b->shape()).shape * frame;
    else q = frame.transpose() * frame;
    Eigen::SelfAdjointEigenSolver<Mat> es(q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().maxCoeff() > 4.0 * es.eigenvalues().minCoeff()) return true;
  }
  return false;
}

double proj_volume3_core(const SplitProjection& s, const Mat& frame) {
  double vol = 0.0;
  Hull3 poly;
  if (!s.polys.empty()) {
    poly = convex_hull_3d(projected_polytope<3>(s, frame));
    vol += poly.volume;
  }
  if (s.smooth.empty()) return vol;
  // V(S) = 1/3 int h_S det(R_S)
  const auto& g = sphere2_grid(anisotropic(s, frame) ? Sphere2Resolution::fine : Sphere2Resolution::coarse);
  const ProjectedQuadrics q(s, frame);
  // h_S and its second derivative along the unit tangent t at w
  auto second = [&](const Eigen::Vector3d& w, const Eigen::Vector3d& t) {
    if (q.ok) {
      Mat hess;
      const double hv = q.value(Vec(w), nullptr, &hess);
      return std::pair{hv, double(t.dot(hess * t))};
    }
    std::vector<SmallJet> y;
    for (int a = 0; a < 3; ++a) {
      const std::array<double, 1> grad{t[a]};
      y.push_back(SmallJet::affine(w[a], grad));
    }
    const SmallJet h = restricted_support(s, frame, y);
    return std::pair{h.value(), h.hess(0, 0)};
  };
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& w = g.nodes[i];
    const auto& t = g.tangents[i];
    double hv, det;
    if (q.ok) {
      Mat hess;
      hv = q.value(Vec(w), nullptr, &hess);
      const Mat r = t.transpose() * hess * t;
      det = r(0, 0) * r(1, 1) - r(0, 1) * r(0, 1);
    } else {
      std::vector<SmallJet> y;
      for (int a = 0; a < 3; ++a) {
        const std::array<double, 2> grad{t(a, 0), t(a, 1)};
        y.push_back(SmallJet::affine(w[a], grad));
      }
      const SmallJet h = restricted_support(s, frame, y);
      hv = h.value();
      det = h.hess(0, 0) * h.hess(1, 1) - h.hess(0, 1) * h.hess(0, 1);
    }
    acc += g.weights[i] * hv * det;
  }
  // 3 V(S,S,P) = 1/2 sum over edges of length * int_arc h_S (h_S + h_S'') dt
  static const GaussRule arc_rule = gauss_legendre(48);
  for (const auto& e : poly.edges) {
    double sum = 0.0;
    for (std::size_t j = 0; j < arc_rule.nodes.size(); ++j) {
      const double t = 0.5 * e.angle * (arc_rule.nodes[j] + 1.0);
      const Eigen::Vector3d w = std::cos(t) * e.start + std::sin(t) * e.turn;
      const Eigen::Vector3d dw = -std::sin(t) * e.start + std::cos(t) * e.turn;
      const auto [hv, d2] = second(w, dw);
      sum += arc_rule.weights[j] * hv * d2;
    }
    vol += 0.5 * e.length * 0.5 * e.angle * sum;
  }
  vol += acc / 3.0;
  // 3 V(P,P,S) = sum over faces of h_S(normal) * area
  for (const auto& f : poly.faces) {
    const std::vector<double> y{f.normal.x(), f.normal.y(), f.normal.z()};
    vol += restricted_support(s, frame, y) * f.measure;
  }
  return vol;
}

// vol(S) = det(M) vol(M^{-1} S), and h_{M^{-1} S}(y) = h_S(M^{-1} y) for symmetric M
template <class Core>
double rounded(const ConvexBody& body, const Mat& frame, Core core) {
  const auto s = split(body);
  if (s.smooth.empty()) return core(s, frame);
  const Mat m = rounding_map(s, frame);
  const Mat minv = m.inverse();
  return m.determinant() * core(s, Mat(frame * minv));
}

double proj_area(const ConvexBody& body, const Mat& frame) { return rounded(body, frame, proj_area_core); }
double proj_volume3(const ConvexBody& body, const Mat& frame) { return rounded(body, frame, proj_volume3_core); }

}  // namespace

double proj_volume(const ConvexBody& body, const Subspace& e) {
  if (e.real_dim() != body.real_dim())
    throw Error(ErrorKind::dimension_mismatch, "subspace and body live in different spaces");
  const Mat& f = e.frame();
  switch (e.k()) {
    case 1: {
      const Vec v = f.col(0);
      return body.support(v) + body.support(-v);
    }
    case 2:
      return proj_area(body, f);
    case 3:
      return proj_volume3(body, f);
    default:
      throw Error(ErrorKind::unsupported_dimension, "proj_volume supports k in {1,2,3}");
  }
}

}  // namespace afval
