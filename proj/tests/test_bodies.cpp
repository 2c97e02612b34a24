#include <doctest.h>

#include <cmath>

#include "afval/body_io.hpp"
#include "afval/bodies.hpp"
#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/harmonics.hpp"
#include "afval/hull.hpp"
#include "test_util.hpp"

using namespace afval;

namespace {

BodyPtr perturbed(int n, double eps) {
  return make_body(ConvexBody::perturbed_ball(
      n, 1.0, {eps}, {std::make_shared<HermitianQuadratic>(HermitianQuadratic::re_z1_conj_z2(n))}));
}

BodyPtr ellipsoid(int n, Rng& rng) {
  return make_body(ConvexBody::ellipsoid(n, testutil::random_spd(2 * n, rng, 0.3), testutil::random_unit(2 * n, rng)));
}

// every body variant, for the generic properties
std::vector<BodyPtr> zoo(int n, Rng& rng) {
  Mat v(2 * n, 7);
  for (int j = 0; j < 7; ++j) v.col(j) = testutil::random_unit(2 * n, rng);
  const BodyPtr e = ellipsoid(n, rng);
  const BodyPtr p = make_body(ConvexBody::polytope(n, v));
  return {make_body(ConvexBody::ball(n, 1.5, testutil::random_unit(2 * n, rng))), e, p, perturbed(n, 0.1),
          minkowski({{1.0, e}, {0.5, p}}), make_body(ConvexBody::cube(n, -1.0, 2.0))};
}

}  // namespace

TEST_SUITE("bodies") {

TEST_CASE("support examples") {
  Rng rng(1);
  const ConvexBody b = ConvexBody::ball(3, 1.0);
  const Vec p = Vec::LinSpaced(6, -1.0, 1.5);
  const ConvexBody pt = ConvexBody::point(p);
  const ConvexBody cube = ConvexBody::cube(3, -1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Vec u = testutil::random_unit(6, rng);
    CHECK(b.support(u) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pt.support(u) == doctest::Approx(p.dot(u)).epsilon(1e-14));
    CHECK(cube.support(u) == doctest::Approx(u.cwiseAbs().sum()).epsilon(1e-14));
  }
}

TEST_CASE("ellipsoid support") {
  Rng rng(2);
  Vec axes(4);
  axes << 1.0, 2.0, 0.5, 3.0;
  const ConvexBody e = ConvexBody::ellipsoid_axes(2, axes);
  for (int i = 0; i < 20; ++i) {
    const Vec u = testutil::random_unit(4, rng);
    CHECK(e.support(u) == doctest::Approx(axes.cwiseProduct(u).norm()).epsilon(1e-14));
  }
  Mat bad = Mat::Identity(4, 4);
  bad(3, 3) = -1.0;
  CHECK_THROWS_AS(ConvexBody::ellipsoid(2, bad), Error);
}

TEST_CASE("minkowski examples") {
  Rng rng(3);
  const BodyPtr e = ellipsoid(2, rng);
  const BodyPtr sum0 = minkowski({{1.0, e}, {1.0, make_body(ConvexBody::point(Vec::Zero(4)))}});
  const BodyPtr twob = scaled(2.0, make_body(ConvexBody::ball(2, 1.0)));
  Vec a = Vec::Zero(4), b = Vec::Zero(4);
  a[0] = 1.0;
  b[1] = 1.0;
  const BodyPtr square = minkowski({{1.0, make_body(ConvexBody::segment(-a, a))}, {1.0, make_body(ConvexBody::segment(-b, b))}});
  for (int i = 0; i < 20; ++i) {
    const Vec u = testutil::random_unit(4, rng);
    CHECK(sum0->support(u) == doctest::Approx(e->support(u)).epsilon(1e-14));
    CHECK(twob->support(u) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(square->support(u) == doctest::Approx(std::abs(u[0]) + std::abs(u[1])).epsilon(1e-14));
  }
  CHECK_THROWS_AS(minkowski({{-1.0, e}}), Error);
}

TEST_CASE("support functions are sublinear") {
  Rng rng(4);
  for (int n : {2, 3})
    for (const auto& k : zoo(n, rng))
      for (int i = 0; i < 200; ++i) {
        const Vec u = testutil::random_unit(2 * n, rng), v = testutil::random_unit(2 * n, rng);
        const Vec w = u + v;
        CHECK(k->support_ext(std::span<const double>(w.data(), w.size())) <=
              k->support(u) + k->support(v) + 1e-10);
      }
}

TEST_CASE("restricted hessian examples") {
  Rng rng(5);
  const int n = 3;
  const ConvexBody b = ConvexBody::ball(n, 2.5, testutil::random_unit(6, rng));
  const BodyPtr e = ellipsoid(n, rng);
  const BodyPtr ep = minkowski({{1.0, e}, {0.3, make_body(ConvexBody::ball(n, 1.0))}});
  for (int i = 0; i < 50; ++i) {
    const Vec u = testutil::random_unit(6, rng);
    CHECK((b.restricted_hessian(u) - 2.5 * Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ep->restricted_hessian(u) - e->restricted_hessian(u) - 0.3 * Mat::Identity(5, 5)).cwiseAbs().maxCoeff() <
          1e-11);
  }
  CHECK_THROWS_AS(ConvexBody::cube(n, 0.0, 1.0).restricted_hessian(Vec::Unit(6, 0)), Error);
}

TEST_CASE("restricted hessian against central differences") {
  Rng rng(6);
  const int n = 2;
  const BodyPtr pb = make_body(ConvexBody::perturbed_ball(
      n, 1.0, {0.05, 0.02},
      {std::make_shared<HermitianQuadratic>(HermitianQuadratic::re_z1_conj_z2(n)),
       std::make_shared<SphericalHarmonic>(2, 1, n, Vec::Unit(4, 0))}));
  const BodyPtr e = ellipsoid(n, rng);
  for (const BodyPtr& k : {pb, e}) {
    auto f = [&](const Vec& x) { return k->support_ext(std::span<const double>(x.data(), x.size())); };
    for (int i = 0; i < 1000; ++i) {
      const Vec u = testutil::random_unit(4, rng);
      const AdaptedFrame fr = adapted_frame(u);
      const Mat fd = fr.tangent.transpose() * testutil::fd_hessian(f, u, 1e-4) * fr.tangent;
      CHECK((fd - k->restricted_hessian(u)).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("perturbed ball certificate") {
  const ConvexityCertificate ok = certify_convexity(*perturbed(3, 0.05));
  CHECK(ok.passed);
  CHECK(ok.min_eigenvalue > 0.5);
  CHECK(ok.nodes == 10000);
  CHECK_THROWS_AS(perturbed(2, 5.0), Error);

  Rng rng(7);
  const BodyPtr k = perturbed(2, 0.3);
  for (int i = 0; i < 1000; ++i) {
    Eigen::SelfAdjointEigenSolver<Mat> es(k->restricted_hessian(testutil::random_unit(4, rng)));
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("proj_volume examples") {
  Rng rng(8);
  const ConvexBody b = ConvexBody::ball(3, 1.0);
  for (int i = 0; i < 5; ++i) {
    CHECK(proj_volume(b, sample_orbit(3, 2, 0.1 * i, rng())) == doctest::Approx(pi).epsilon(1e-10));
    CHECK(proj_volume(b, sample_orbit(3, 3, 0.1 * i, rng())) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-9));
    Mat line = testutil::random_unit(6, rng);
    CHECK(proj_volume(b, Subspace(line)) == doctest::Approx(2.0).epsilon(1e-15));
  }
  const ConvexBody cube = ConvexBody::cube(3, 0.0, 1.0);
  Mat coord = Mat::Zero(6, 3);
  coord(0, 0) = coord(3, 1) = coord(5, 2) = 1.0;
  CHECK(proj_volume(cube, Subspace(coord)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj_volume(cube, Subspace(Mat(coord.leftCols(2)))) == doctest::Approx(1.0).epsilon(1e-12));
  // diagonal of the unit cube
  CHECK(proj_volume(cube, Subspace(Mat(Vec::Constant(6, 1.0 / std::sqrt(6.0))))) == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("ellipsoid projections are ellipsoids") {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Mat q = testutil::random_spd(6, rng, 0.2);
    const ConvexBody e = ConvexBody::ellipsoid(3, q, testutil::random_unit(6, rng));
    for (int k : {2, 3}) {
      const Subspace s = sample_orbit(3, k, 0.37, rng());
      const double det = (s.frame().transpose() * q * s.frame()).determinant();
      const double exact = (k == 2 ? pi : 4.0 * pi / 3.0) * std::sqrt(det);
      CHECK(proj_volume(e, s) == doctest::Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("elongated sums against boundary polygons and hulls") {
  // boundary points grad h(w) of the projected body traced directly
  Rng rng(19);
  Vec ax1(6), ax2(6);
  ax1 << 8.0, 1.0, 0.3, 1.0, 1.0, 0.5;
  ax2 << 0.4, 1.0, 6.0, 1.0, 0.2, 1.0;
  const Mat rot = haar_unitary(3, 4);
  const BodyPtr e1 = make_body(ConvexBody::ellipsoid_axes(3, ax1));
  const BodyPtr e2 = make_body(ConvexBody::ellipsoid(3, rot * Mat(ax2.cwiseAbs2().asDiagonal()) * rot.transpose()));
  const BodyPtr sum = minkowski({{1.0, e1}, {0.5, e2}, {0.3, make_body(ConvexBody::ball(3, 1.0))}});
  auto grad = [&](const Vec& x) {
    Vec g(6);
    for (int i = 0; i < 6; ++i) {
      Vec a = x, b = x;
      a[i] += 1e-6;
      b[i] -= 1e-6;
      g[i] = (sum->support_ext(std::span<const double>(a.data(), 6)) - sum->support_ext(std::span<const double>(b.data(), 6))) / 2e-6;
    }
    return g;
  };
  for (int rep = 0; rep < 3; ++rep) {
    const Subspace p2 = sample_orbit(3, 2, 0.3 * rep, rng());
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i < 4000; ++i) {
      const double t = 2.0 * pi * i / 4000;
      const Vec w = std::cos(t) * p2.frame().col(0) + std::sin(t) * p2.frame().col(1);
      pts.emplace_back((p2.frame().transpose() * grad(w)));
    }
    CHECK(proj_volume(*sum, p2) == doctest::Approx(convex_hull_2d(pts).area).epsilon(1e-5));

    // closed triangulated surface through grad h on a latitude-longitude
    // mesh; the error is O(h^2), removed by one Richardson step
    const Subspace p3 = sample_orbit(3, 3, 0.3 * rep, rng());
    auto mesh_volume = [&](int nt) {
      const int np = 2 * nt;
      std::vector<Eigen::Vector3d> surf;
      for (int i = 0; i <= nt; ++i)
        for (int j = 0; j < np; ++j) {
          const double th = pi * i / nt, ph = 2.0 * pi * j / np;
          const Eigen::Vector3d y(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
          surf.emplace_back(p3.frame().transpose() * grad(p3.frame() * y));
        }
      auto at = [&](int i, int j) { return surf[static_cast<std::size_t>(i * np + (j % np))]; };
      double m = 0.0;
      for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
          const Eigen::Vector3d a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
          m += a.dot(b.cross(c)) / 6.0 + a.dot(c.cross(d)) / 6.0;
        }
      return std::abs(m);
    };
    const double m1 = mesh_volume(300), m2 = mesh_volume(600);
    CHECK(proj_volume(*sum, p3) == doctest::Approx(m2 + (m2 - m1) / 3.0).epsilon(2e-5));
  }
}

TEST_CASE("closed-form quadric path agrees with the jet path") {
  Rng rng(10);
  const BodyPtr e = ellipsoid(3, rng);
  const BodyPtr b = make_body(ConvexBody::ball(3, 1.0));
  // a perturbation with zero weight keeps the shape but forces the generic path
  const BodyPtr b_jet = make_body(ConvexBody::perturbed_ball(
      3, 1.0, {0.0}, {std::make_shared<HermitianQuadratic>(HermitianQuadratic::re_z1_conj_z2(3))}));
  const BodyPtr fast = minkowski({{1.0, e}, {0.7, b}});
  const BodyPtr slow = minkowski({{1.0, e}, {0.7, b_jet}});
  for (int i = 0; i < 10; ++i) {
    const Vec u = testutil::random_unit(6, rng);
    CHECK((fast->restricted_hessian(u) - slow->restricted_hessian(u)).cwiseAbs().maxCoeff() < 1e-12);
    for (int k : {2, 3}) {
      const Subspace s = sample_orbit(3, k, 0.1 * i, rng());
      CHECK(proj_volume(*fast, s) == doctest::Approx(proj_volume(*slow, s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("proj_volume: scaling, translation, monotonicity") {
  Rng rng(11);
  for (const auto& k : zoo(3, rng)) {
    for (int dim : {1, 2, 3}) {
      const Subspace s = dim == 1 ? Subspace(Mat(testutil::random_unit(6, rng))) : sample_orbit(3, dim, 0.6, rng());
      const double v = proj_volume(*k, s);
      CHECK(proj_volume(*scaled(1.7, k), s) == doctest::Approx(std::pow(1.7, dim) * v).epsilon(1e-9));
      CHECK(proj_volume(*translated(k, 3.0 * testutil::random_unit(6, rng)), s) == doctest::Approx(v).epsilon(1e-9));
    }
  }
  const BodyPtr b = make_body(ConvexBody::ball(3, 1.0));
  const Subspace s = sample_orbit(3, 3, 0.2, 5);
  CHECK(proj_volume(*b, s) < proj_volume(*scaled(1.01, b), s));
}

TEST_CASE("mixed smooth and polytope sums project exactly") {
  Vec a = Vec::Zero(6);
  a[0] = 1.0;
  const BodyPtr seg = make_body(ConvexBody::segment(-a, a));
  const BodyPtr sum = minkowski({{1.0, make_body(ConvexBody::ball(3, 1.0))}, {1.0, seg}});
  Mat plane = Mat::Zero(6, 2);
  plane(0, 0) = plane(1, 1) = 1.0;
  // stadium: disc plus a 2 x 2 rectangle
  CHECK(proj_volume(*sum, Subspace(plane)) == doctest::Approx(pi + 4.0).epsilon(1e-9));
  Mat space = Mat::Zero(6, 3);
  space(0, 0) = space(1, 1) = space(2, 2) = 1.0;
  // capsule: ball plus cylinder of length 2
  CHECK(proj_volume(*sum, Subspace(space)) == doctest::Approx(4.0 * pi / 3.0 + 2.0 * pi).epsilon(1e-8));
}

TEST_CASE("convex hulls") {
  Rng rng(12);
  std::vector<Eigen::Vector2d> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.7}};
  const Hull2 h2 = convex_hull_2d(sq);
  CHECK(h2.vertices.size() == 4);
  CHECK(h2.area == doctest::Approx(1.0));
  double perim = 0.0;
  Eigen::Vector2d ns = Eigen::Vector2d::Zero();
  for (const auto& e : h2.edges) {
    perim += e.measure;
    ns += e.measure * e.normal;
  }
  CHECK(perim == doctest::Approx(4.0));
  CHECK(ns.norm() < 1e-14);

  std::vector<Eigen::Vector3d> cube;
  for (int i = 0; i < 8; ++i) cube.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  cube.emplace_back(0.5, 0.5, 0.5);
  const Hull3 h3 = convex_hull_3d(cube);
  CHECK(h3.volume == doctest::Approx(1.0));
  double area = 0.0;
  for (const auto& f : h3.faces) area += f.measure;
  CHECK(area == doctest::Approx(6.0));

  // random points on the unit sphere: hull volume approaches 4 pi / 3 from below
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < 2000; ++i) pts.emplace_back(testutil::random_unit(3, rng));
  const double v = convex_hull_3d(pts).volume;
  CHECK(v < 4.0 * pi / 3.0);
  CHECK(v > 0.98 * 4.0 * pi / 3.0);

  const auto msum = minkowski_vertices_2d({{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(convex_hull_2d(msum).area == doctest::Approx(4.0 + 0.5 + 2.0 + 2.0));
}

TEST_CASE("body documents") {
  const BodyPtr b = parse_body_text(R"({"n": 2, "body": {"type": "ball", "radius": 1.0}})");
  CHECK(b->type_name() == "ball");
  CHECK(b->support(Vec::Unit(4, 2)) == 1.0);

  const std::string combo = R"({"n": 2, "body": {"type": "minkowski", "terms": [
      {"coef": 1.0, "body": {"type": "ball", "radius": 0.5}},
      {"coef": 2.0, "body": {"type": "polytope", "vertices": [[0,0,0,0],[1,0,0,0]]}}]}})";
  const BodyPtr c = parse_body_text(combo);
  CHECK(c->support(Vec::Unit(4, 0)) == doctest::Approx(2.5));

  try {
    parse_body_text(R"({"n": 2, "body": {"type": "ball", "radius": -1.0}})");
    FAIL("negative radius accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::schema);
    CHECK(std::string(e.what()).find("radius") != std::string::npos);
  }
  try {
    parse_body_text(R"({"n": 2, "body": {"type": "minkowski", "terms": [{"coef": 1, "body": {"type": "ball"}}]}})");
    FAIL("missing radius accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("body.terms[0].body.radius") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_body_text("{not json"), Error);
}

TEST_CASE("body documents round-trip") {
  Rng rng(13);
  for (const std::string path : {"ball.json", "ellipsoid3.json", "cube3.json", "perturbed3.json", "ball_plus_segment3.json",
                                 "ellipsoid2.json"}) {
    const BodyPtr k = load_body(std::string(AFVAL_DATA_DIR) + "/" + path);
    const nlohmann::json doc = serialize_body(*k);
    const BodyPtr k2 = parse_body(doc);
    CHECK(serialize_body(*k2) == doc);
    for (int i = 0; i < 20; ++i) {
      const Vec u = testutil::random_unit(k->real_dim(), rng);
      CHECK(k2->support(u) == k->support(u));
    }
  }
}

}
