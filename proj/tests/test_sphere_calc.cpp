#include <doctest.h>

#include <cmath>

#include "afval/bodies.hpp"
#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/exec.hpp"
#include "afval/harmonics.hpp"
#include "afval/sphere_calc.hpp"
#include "afval/valuations.hpp"
#include "test_util.hpp"

using namespace afval;

namespace {

// int over S^{d-1} of prod x_i^{a_i}, all a_i even
double monomial_integral(const std::vector<int>& a) {
  double num = 2.0, s = 0.0;
  for (int k : a) {
    num *= std::tgamma((k + 1) / 2.0);
    s += (k + 1) / 2.0;
  }
  return num / std::tgamma(s);
}

SphereFunctionPtr harmonic(int k, int l, int n, const Vec& pole, HarmonicPart part = HarmonicPart::real) {
  return std::make_shared<SphericalHarmonic>(k, l, n, pole, part);
}

SphereFunctionPtr constant(int n, double c) { return std::make_shared<ConstantFunction>(2 * n, c); }

}  // namespace

TEST_SUITE("sphere_calc") {

TEST_CASE("grid totals and low moments") {
  for (int n : {2, 3, 4}) {
    const double area = sphere_area(n);
    CHECK(area == doctest::Approx(2.0 * n * unit_ball_volume(2 * n)).epsilon(1e-15));
    const SphereGrid mc = build_grid(n, GridMethod::monte_carlo, 2000, 5);
    double w = 0.0;
    for (double x : mc.weights) w += x;
    CHECK(w == doctest::Approx(area).epsilon(1e-13));
    // antithetic pairs cancel odd moments exactly
    double odd = 0.0;
    for (std::size_t i = 0; i < mc.size(); ++i) odd += mc.weights[i] * mc.nodes(0, static_cast<Eigen::Index>(i));
    CHECK(std::abs(odd) < 1e-13);
    CHECK(mc.size() % 2 == 0);
    CHECK((build_grid(n, GridMethod::monte_carlo, 2000, 5).nodes - mc.nodes).norm() == 0.0);
    CHECK((build_grid(n, GridMethod::monte_carlo, 2000, 6).nodes - mc.nodes).norm() > 0.0);
  }
  for (int n : {2, 3}) {
    const SphereGrid g = build_grid(n, GridMethod::product, n == 2 ? 12 : 10, 0);
    double w = 0.0, x2 = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec u = g.node(i);
      w += g.weights[i];
      x2 += g.weights[i] * u[0] * u[0];
      odd += g.weights[i] * u[0] * u[1] * u[1];
    }
    CHECK(w == doctest::Approx(sphere_area(n)).epsilon(1e-12));
    CHECK(x2 == doctest::Approx(sphere_area(n) / (2 * n)).epsilon(1e-12));
    CHECK(std::abs(odd) < 1e-12);
  }
  CHECK_THROWS_AS(build_grid(2, GridMethod::product, 9, 0), Error);
}

TEST_CASE("product grid on S^3 integrates degree 8") {
  const SphereGrid g = build_grid(2, GridMethod::product, 12, 0);
  const std::vector<std::vector<int>> cases = {{8, 0, 0, 0}, {2, 2, 2, 2}, {4, 0, 2, 2}, {0, 6, 2, 0}, {2, 0, 0, 6}};
  for (const auto& a : cases) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double m = g.weights[i];
      for (int c = 0; c < 4; ++c) m *= std::pow(g.nodes(c, static_cast<Eigen::Index>(i)), a[static_cast<std::size_t>(c)]);
      s += m;
    }
    CHECK(std::abs(s - monomial_integral(a)) < 1e-10);
  }
}

TEST_CASE("pairwise sum and serial / parallel sweeps") {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + i);
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-14));

  const SphereGrid g = build_grid(3, GridMethod::monte_carlo, 4000, 9);
  const BodyPtr e = make_body(ConvexBody::ellipsoid_axes(3, Vec::LinSpaced(6, 0.5, 2.0)));
  const auto fs = std::vector<SphereFunctionPtr>{support_function(e), constant(3, 1.0)};
  const ValuationCoeffs mu = psi_coeffs(0.3, 3);
  const std::vector<MixedTerm> terms = {{0, 1, 1}, {0, 0, 1}, {1, 0, 0}};
  const GridIntegrals a = mixed_integrals(mu, fs, terms, g, Exec::serial);
  const GridIntegrals b = mixed_integrals(mu, fs, terms, g, Exec::parallel);
  CHECK((a.value - b.value).norm() == 0.0);
  CHECK((a.cov - b.cov).norm() == 0.0);
}

TEST_CASE("densities of constants") {
  for (int n : {2, 3, 4}) {
    const ValuationCoeffs m2{2, 0.4, 0.9, n};
    const Vec u = Vec::Unit(2 * n, 1);
    CHECK(D_mu(m2, ConstantFunction(2 * n, 1.0), u) ==
          doctest::Approx((2.0 * (n - 1) * 0.4 + 0.9) / unit_ball_volume(2 * n - 2)).epsilon(1e-13));
    if (n >= 3) {
      const ValuationCoeffs m3{3, 0.4, 0.9, n};
      const double expected = (n - 1.0) * (2.0 * (n - 2) * 0.4 + 3 * 0.9) / unit_ball_volume(2 * n - 3);
      CHECK(D_mu(m3, ConstantFunction(2 * n, 1.0), ConstantFunction(2 * n, 1.0), u) ==
            doctest::Approx(expected).epsilon(1e-13));
      CHECK(D_mu_B(m3, ConstantFunction(2 * n, 1.0), u) == doctest::Approx(expected).epsilon(1e-13));
      // a = (n-1)((2n-3)c1 - 2(n-2)c0), b from the same operator: a + 2(n-1)b
      const double a = (n - 1.0) * ((2 * n - 3) * 0.9 - 2 * (n - 2) * 0.4);
      const double b = (2.0 * (n - 2) * 0.4 - (n - 3) * 0.9);
      CHECK(D_mu_B_route(m3, 1.0, 0.0, 0.0) == doctest::Approx((a + 2 * (n - 1) * b) / unit_ball_volume(2 * n - 3)));
    }
  }
}

TEST_CASE("area measure densities of balls") {
  Rng rng(1);
  const int n = 3;
  const ValuationCoeffs m2{2, 0.4, 0.9, n}, m3{3, 0.4, 0.9, n};
  const ConvexBody b1 = ConvexBody::ball(n, 1.5, testutil::random_unit(6, rng));
  const ConvexBody b2 = ConvexBody::ball(n, 0.7);
  for (int i = 0; i < 10; ++i) {
    const Vec u = testutil::random_unit(6, rng);
    CHECK(area_measure_density(m2, b1, u) ==
          doctest::Approx(1.5 * (2.0 * (n - 1) * 0.4 + 0.9) / unit_ball_volume(2 * n - 2)).epsilon(1e-12));
    CHECK(area_measure_density(m3, b1, b2, u) ==
          doctest::Approx(1.5 * 0.7 * (n - 1.0) * (2.0 * (n - 2) * 0.4 + 3 * 0.9) / unit_ball_volume(2 * n - 3))
              .epsilon(1e-12));
  }
}

TEST_CASE("mixed density is symmetric") {
  Rng rng(2);
  const int n = 3;
  const ValuationCoeffs mu = psi_coeffs(0.2, n);
  const ConvexBody e = ConvexBody::ellipsoid(n, testutil::random_spd(6, rng, 0.3));
  const ConvexBody p = ConvexBody::perturbed_ball(n, 1.0, {0.1}, {harmonic(2, 1, n, Vec::Unit(6, 0))});
  for (int i = 0; i < 50; ++i) {
    const Vec u = testutil::random_unit(6, rng);
    CHECK(testutil::rel_err(area_measure_density(mu, e, p, u), area_measure_density(mu, p, e, u)) < 1e-12);
  }
}

TEST_CASE("two degree-2 routes agree on harmonics") {
  Rng rng(3);
  for (int n : {2, 3}) {
    const ValuationCoeffs mu{2, 0.3, 0.8, n};
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; k + l <= 4 && l <= 3; ++l) {
        const auto f = harmonic(k, l, n, testutil::random_unit(2 * n, rng), l % 2 ? HarmonicPart::imag : HarmonicPart::real);
        for (int i = 0; i < 20; ++i) {
          const Vec u = testutil::random_unit(2 * n, rng);
          CHECK(std::abs(D_mu(mu, *f, u) - D_mu2_route(mu, *f, u)) < 1e-8);
        }
      }
    CHECK_THROWS_AS(D_mu2_route(mu, BodySupport(make_body(ConvexBody::ball(n, 1.0))), Vec::Unit(2 * n, 0)), Error);
  }
}

TEST_CASE("D_mu_B: spectral route against D_mu(1, f)") {
  Rng rng(4);
  for (int n : {3, 4}) {
    const ValuationCoeffs mu{3, 0.5, 0.6, n};
    const ConstantFunction one(2 * n, 1.0);
    for (int k = 0; k <= 2; ++k)
      for (int l = 0; l <= 2; ++l) {
        const auto f = harmonic(k, l, n, testutil::random_unit(2 * n, rng));
        for (int i = 0; i < 10; ++i) {
          const Vec u = testutil::random_unit(2 * n, rng);
          CHECK(std::abs(D_mu_B(mu, *f, u) - D_mu(mu, one, *f, u)) < 1e-8);
          CHECK(std::abs(D_mu_B(mu, *f, u) - dmuB_eigenvalue(mu, k, l) * f->value(u)) < 1e-8);
        }
      }
    // linear functionals are in the kernel
    const LinearFunctional lin(testutil::random_unit(2 * n, rng));
    for (int i = 0; i < 10; ++i) {
      const Vec u = testutil::random_unit(2 * n, rng);
      CHECK(std::abs(D_mu_B(mu, lin, u)) < 1e-12);
      CHECK(std::abs(D_mu(mu, one, lin, u)) < 1e-12);
    }
  }
}

TEST_CASE("linear slots integrate to zero") {
  Rng rng(5);
  const int n = 3;
  const SphereGrid g = build_grid(n, GridMethod::monte_carlo, 4000, 3);
  const ValuationCoeffs mu = psi_coeffs(0.4, n);
  const BodyPtr e = make_body(ConvexBody::ellipsoid(n, testutil::random_spd(6, rng, 0.3)));
  const auto lin = std::make_shared<LinearFunctional>(testutil::random_unit(6, rng));
  // lin in the first slot: antithetic pairs cancel exactly
  const RouteValue a = valuation_operator_route(mu, {lin, support_function(e), support_function(e)}, g);
  CHECK(std::abs(a.value) < 1e-12);
  // lin inside the operator: D(f, lin) vanishes pointwise
  const RouteValue b = valuation_operator_route(mu, {support_function(e), support_function(e), lin}, g);
  CHECK(std::abs(b.value) < 1e-10);
  const RouteValue c = valuation_operator_route(phi_coeffs(0.4, n), {support_function(e), lin}, g);
  CHECK(std::abs(c.value) < 1e-10);
}

TEST_CASE("ball values through the operator route") {
  const SphereGrid g2 = build_grid(2, GridMethod::product, 16, 0);
  const SphereGrid g3 = build_grid(3, GridMethod::monte_carlo, 2000, 1);
  for (double u : {0.0, 0.3, 0.75, 1.0}) {
    const RouteValue p = valuation_operator_route(phi_coeffs(u, 2), {constant(2, 1.0), constant(2, 1.0)}, g2);
    CHECK(std::abs(p.value - pi) < 1e-10);
    const RouteValue q =
        valuation_operator_route(psi_coeffs(u, 3), {constant(3, 1.0), constant(3, 1.0), constant(3, 1.0)}, g3);
    CHECK(q.value == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-13));
    CHECK(q.se < 1e-12);
  }
}

TEST_CASE("slot symmetry") {
  Rng rng(6);
  const int n = 2;
  const SphereGrid g = build_grid(n, GridMethod::product, 20, 0);
  const ValuationCoeffs mu{2, 0.3, 0.6, n};
  const auto f = harmonic(2, 1, n, testutil::random_unit(4, rng));
  const auto e = support_function(make_body(ConvexBody::ellipsoid(n, testutil::random_spd(4, rng, 0.3))));
  const double ab = valuation_operator_route(mu, {f, e}, g).value;
  const double ba = valuation_operator_route(mu, {e, f}, g).value;
  CHECK(std::abs(ab - ba) < 1e-7 * std::max(1.0, std::abs(ab)));

  const int m = 3;
  const SphereGrid g3 = build_grid(m, GridMethod::product, 10, 0);
  const ValuationCoeffs m3{3, 0.5, 0.6, m};
  const auto f1 = harmonic(1, 1, m, testutil::random_unit(6, rng));
  const auto f2 = harmonic(2, 0, m, testutil::random_unit(6, rng));
  const auto f3 = std::make_shared<LinearCombination>(
      std::vector<double>{1.0, 0.3}, std::vector<SphereFunctionPtr>{constant(m, 1.0), harmonic(2, 1, m, testutil::random_unit(6, rng))});
  // polynomial slots, so the grid integrates every ordering exactly
  const double x = valuation_operator_route(m3, {f1, f2, f3}, g3).value;
  const double y = valuation_operator_route(m3, {f2, f1, f3}, g3).value;
  const double z = valuation_operator_route(m3, {f3, f1, f2}, g3).value;
  const double scale = std::max(1.0, std::abs(x));
  CHECK(std::abs(x - y) < 1e-10 * scale);
  CHECK(std::abs(x - z) < 1e-10 * scale);
}

TEST_CASE("positivity and homogeneity") {
  Rng rng(7);
  const int n = 3;
  const SphereGrid g = build_grid(n, GridMethod::monte_carlo, 2000, 4);
  for (int i = 0; i < 5; ++i) {
    const BodyPtr k = make_body(ConvexBody::ellipsoid(n, testutil::random_spd(6, rng, 0.3), testutil::random_unit(6, rng)));
    const auto h = support_function(k), h2 = support_function(scaled(2.0, k));
    const ValuationCoeffs mu = psi_coeffs(0.2 * i, n);
    const double v = valuation_operator_route(mu, {h, h, h}, g).value;
    CHECK(v > 0.0);
    CHECK(valuation_operator_route(mu, {h2, h2, h2}, g).value == doctest::Approx(8.0 * v).epsilon(1e-8));
    const ValuationCoeffs m2 = phi_coeffs(0.15 * i, n);
    const double w = valuation_operator_route(m2, {h, h}, g).value;
    CHECK(w > 0.0);
    CHECK(valuation_operator_route(m2, {h2, h2}, g).value == doctest::Approx(4.0 * w).epsilon(1e-8));
  }
}

TEST_CASE("translation invariance") {
  Rng rng(8);
  const int n = 3;
  const SphereGrid g = build_grid(n, GridMethod::monte_carlo, 4000, 2);
  const BodyPtr k = make_body(ConvexBody::ellipsoid(n, testutil::random_spd(6, rng, 0.3)));
  const BodyPtr kt = translated(k, 2.0 * testutil::random_unit(6, rng));
  const BodyPtr l = make_body(ConvexBody::perturbed_ball(n, 1.0, {0.1}, {harmonic(1, 1, n, Vec::Unit(6, 0))}));
  const ValuationCoeffs mu = psi_coeffs(0.5, n);
  const double a = valuation_operator_route(mu, {support_function(l), support_function(k), support_function(l)}, g).value;
  const double b = valuation_operator_route(mu, {support_function(l), support_function(kt), support_function(l)}, g).value;
  CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
}

TEST_CASE("errors") {
  const SphereGrid g = build_grid(3, GridMethod::monte_carlo, 100, 1);
  const auto cube = support_function(make_body(ConvexBody::cube(3, 0.0, 1.0)));
  const ValuationCoeffs mu = phi_coeffs(0.2, 3);
  CHECK_THROWS_AS(valuation_operator_route(mu, {constant(3, 1.0), cube}, g), Error);
  CHECK_NOTHROW(valuation_operator_route(mu, {cube, constant(3, 1.0)}, g));
  CHECK_THROWS_AS(valuation_operator_route(mu, {constant(2, 1.0), constant(2, 1.0)}, g), Error);
  CHECK_THROWS_AS(valuation_operator_route(mu, {constant(3, 1.0)}, g), Error);
}

}
