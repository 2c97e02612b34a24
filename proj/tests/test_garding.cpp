#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/garding.hpp"
#include "afval/hermitian.hpp"
#include "afval/inequalities.hpp"
#include "afval/valuations.hpp"
#include "test_util.hpp"

using namespace afval;

namespace {

using L = FrameLabel;

// Degree-3 polynomial written term by term from minors, independent of the
// closed-form kernel used by the library.
double p3_by_minors(const ValuationCoeffs& mu, const SymForm& a) {
  const int n = mu.n;
  const double c0 = mu.c0, c1 = mu.c1;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i = 2; i <= n; ++i) {
    s1 += minor(a, {L::bar1(), L::re(i)}, {L::bar1(), L::re(i)});
    s1 += minor(a, {L::bar1(), L::im(i)}, {L::bar1(), L::im(i)});
  }
  for (int i = 2; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      s2 += minor(a, {L::re(i), L::re(j)}, {L::re(i), L::re(j)});
      s2 += minor(a, {L::re(i), L::im(j)}, {L::re(i), L::im(j)});
      s2 += minor(a, {L::im(i), L::re(j)}, {L::im(i), L::re(j)});
      s2 += minor(a, {L::im(i), L::im(j)}, {L::im(i), L::im(j)});
      s2 -= 2.0 * minor(a, {L::re(i), L::im(i)}, {L::re(j), L::im(j)});
    }
  for (int i = 2; i <= n; ++i)
    for (int j = 2; j <= n; ++j) s3 += minor(a, {L::re(i), L::im(i)}, {L::re(j), L::im(j)});
  return (((2 * n - 3) * c1 - 2 * (n - 2) * c0) * s1 + (3 * c0 - 2 * c1) * s2 + c1 * s3) / unit_ball_volume(2 * n - 3);
}

double p2_by_trace(const ValuationCoeffs& mu, const SymForm& a) {
  const int n = mu.n;
  double s = 0.0;
  for (int i = 2; i <= n; ++i) s += a(L::re(i), L::re(i)) + a(L::im(i), L::im(i));
  return (((2 * n - 1) * mu.c1 - 2 * (n - 1) * mu.c0) * a(L::bar1(), L::bar1()) + (2 * mu.c0 - mu.c1) * s) /
         unit_ball_volume(2 * n - 2);
}

// U(n-1) acting on the C^{n-1} summand, identity on the first coordinate.
Mat block_unitary(int n, std::uint64_t seed) {
  const int d = 2 * n - 1;
  Mat b = Mat::Identity(d, d);
  b.bottomRightCorner(d - 1, d - 1) = haar_unitary(n - 1, seed);
  return b;
}

ValuationCoeffs random_in_range(int degree, int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (degree == 2) return phi_coeffs(u(rng) * (n + 1.0) / (2.0 * n), n);
  // strict degree-3 cone: pick c1 > 0, c0 between the two bounds
  for (;;) {
    const double c1 = 0.2 + u(rng);
    const double lo = 5.0 * c1 / 6.0;
    const double hi = n == 2 ? lo + 2.0 : (2.0 * n - 3) * c1 / (2.0 * (n - 2));
    if (hi <= lo) continue;
    return {3, lo + (0.05 + 0.9 * u(rng)) * (hi - lo), c1, n};
  }
}

}  // namespace

TEST_SUITE("garding") {

TEST_CASE("minor examples") {
  const SymForm id = SymForm::identity(3);
  CHECK(minor(id, {L::re(2), L::im(2)}, {L::re(2), L::im(2)}) == 1.0);
  CHECK(minor(id, {L::re(2), L::im(2)}, {L::re(3), L::im(3)}) == 0.0);
  Eigen::VectorXd d(5);
  d << 2, 3, 5, 7, 11;
  const SymForm diag(3, d.asDiagonal());
  CHECK(minor(diag, {L::re(2), L::re(3)}, {L::re(2), L::re(3)}) == doctest::Approx(3.0 * 7.0));
  CHECK(minor(diag, {L::bar1(), L::im(2), L::im(3)}, {L::bar1(), L::im(2), L::im(3)}) == doctest::Approx(2.0 * 5 * 11));
  CHECK_THROWS_AS(minor(id, {L::re(2), L::re(2)}, {L::re(2), L::im(2)}), Error);
  CHECK(L::bar1().row(3) == 0);
  CHECK(L::re(2).row(3) == 1);
  CHECK(L::im(3).row(3) == 4);
}

TEST_CASE("SymForm rejects asymmetric input") {
  Mat m = Mat::Identity(3, 3);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(SymForm(2, m), Error);
  CHECK_THROWS_AS(SymForm(3, Mat::Identity(3, 3)), Error);
}

TEST_CASE("p_mu at the identity") {
  for (int n = 2; n <= 6; ++n) {
    const ValuationCoeffs m2{2, 0.7, 1.3, n};
    CHECK(p_mu(m2, SymForm::identity(n)) ==
          doctest::Approx((2.0 * (n - 1) * 0.7 + 1.3) / unit_ball_volume(2 * n - 2)).epsilon(1e-14));
    if (n >= 3) {
      const ValuationCoeffs m3{3, 0.7, 1.3, n};
      CHECK(p_mu(m3, SymForm::identity(n)) ==
            doctest::Approx((n - 1.0) * (2.0 * (n - 2) * 0.7 + 3 * 1.3) / unit_ball_volume(2 * n - 3)).epsilon(1e-13));
    }
  }
}

TEST_CASE("p_mu matches the minor expansion") {
  Rng rng(21);
  for (int n = 3; n <= 5; ++n)
    for (int s = 0; s < 50; ++s) {
      const SymForm a(n, testutil::random_sym(2 * n - 1, rng));
      const ValuationCoeffs m3{3, 0.3 + s * 0.01, 1.1 - s * 0.02, n};
      const ValuationCoeffs m2{2, 0.3 + s * 0.01, 1.1 - s * 0.02, n};
      CHECK(testutil::rel_err(p_mu(m3, a), p3_by_minors(m3, a)) < 1e-12);
      CHECK(testutil::rel_err(p_mu(m2, a), p2_by_trace(m2, a)) < 1e-12);
    }
}

TEST_CASE("rows and columns outside every minor contribute nothing") {
  // zero out the 1bar row/column and all barred rows: every 2x2 minor in the
  // degree-3 sum then has a zero row
  const int n = 3;
  Mat m = Mat::Identity(5, 5);
  m(0, 0) = 0.0;
  for (int i = 2; i < 5; i += 2) m(i, i) = 0.0;
  const ValuationCoeffs mu{3, 1.0, 1.0, n};
  const double s2 = 1.0;  // only A^{23}_{23} survives
  CHECK(p_mu(mu, SymForm(n, m)) == doctest::Approx((3 * mu.c0 - 2 * mu.c1) * s2 / unit_ball_volume(3)));
  m(1, 1) = 0.0;
  CHECK(p_mu(mu, SymForm(n, m)) == 0.0);
}

TEST_CASE("polarisation") {
  Rng rng(5);
  const int n = 4;
  const ValuationCoeffs mu{3, 0.9, 0.8, n};
  for (int s = 0; s < 20; ++s) {
    const SymForm a(n, testutil::random_sym(7, rng)), x(n, testutil::random_sym(7, rng));
    CHECK(testutil::rel_err(p_mu_polarized(mu, a, a), p_mu(mu, a)) < 1e-12);
    CHECK(p_mu_polarized(mu, a, SymForm::zero(n)) == 0.0);
    CHECK(testutil::rel_err(p_mu_polarized(mu, a, x), p_mu_polarized(mu, x, a)) < 1e-12);
    const SymForm y(n, testutil::random_sym(7, rng));
    CHECK(testutil::rel_err(p_mu_polarized(mu, a, 2.0 * x + y),
                            2.0 * p_mu_polarized(mu, a, x) + p_mu_polarized(mu, a, y)) < 1e-11);
  }
  CHECK_THROWS_AS(p_mu_polarized(ValuationCoeffs{2, 1, 1, 3}, SymForm::identity(3), SymForm::identity(3)), Error);
}

TEST_CASE("polarisation against the identity is the displayed linear form") {
  Rng rng(6);
  for (int n = 3; n <= 5; ++n) {
    const ValuationCoeffs mu{3, 0.9, 0.8, n};
    for (int s = 0; s < 20; ++s) {
      // the proof's normal form: X^2_2bar = 0 and the listed upper entries vanish; diagonal free
      Mat x = testutil::random_sym(2 * n - 1, rng);
      for (int i = 1; i < 2 * n - 1; ++i)
        for (int j = i + 1; j < 2 * n - 1; ++j) x(i, j) = x(j, i) = 0.0;
      double tr = 0.0;
      for (int i = 1; i < 2 * n - 1; ++i) tr += x(i, i);
      const double expected = ((n - 1) * ((2 * n - 3) * mu.c1 - 2 * (n - 2) * mu.c0) * x(0, 0) +
                               (2 * (n - 2) * mu.c0 - (n - 3) * mu.c1) * tr) /
                              unit_ball_volume(2 * n - 3);
      CHECK(testutil::rel_err(p_mu_polarized(mu, SymForm::identity(n), SymForm(n, x)), expected) < 1e-12);
    }
  }
}

TEST_CASE("homogeneity") {
  Rng rng(9);
  const int n = 3;
  const SymForm a(n, testutil::random_sym(5, rng));
  for (double t : {0.5, 2.0, 3.0}) {
    CHECK(p_mu(ValuationCoeffs{3, 1.0, 1.1, n}, t * a) ==
          doctest::Approx(t * t * p_mu(ValuationCoeffs{3, 1.0, 1.1, n}, a)).epsilon(1e-13));
    CHECK(p_mu(ValuationCoeffs{2, 1.0, 1.1, n}, t * a) ==
          doctest::Approx(t * p_mu(ValuationCoeffs{2, 1.0, 1.1, n}, a)).epsilon(1e-13));
  }
}

TEST_CASE("invariance under 1 + U(n-1)") {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const int n = 3 + i % 3;
    const Mat a = testutil::random_sym(2 * n - 1, rng);
    const Mat b = block_unitary(n, rng());
    const Mat ab = (b * a * b.transpose()).eval();
    const SymForm s1(n, a), s2(n, (0.5 * (ab + ab.transpose())).eval());
    const ValuationCoeffs m3{3, 0.9, 0.8, n}, m2{2, 0.9, 0.8, n};
    CHECK(std::abs(p_mu(m3, s1) - p_mu(m3, s2)) < 1e-9 * std::max(1.0, std::abs(p_mu(m3, s1))));
    CHECK(std::abs(p_mu(m2, s1) - p_mu(m2, s2)) < 1e-9 * std::max(1.0, std::abs(p_mu(m2, s1))));
  }
}

TEST_CASE("Hess q spectrum: closed form against diagonalisation") {
  Rng rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 3;
    const ValuationCoeffs mu = i % 2 ? random_in_range(3, n, rng) : ValuationCoeffs{3, u(rng), u(rng), n};
    Eigen::SelfAdjointEigenSolver<Mat> es(hessian_q_matrix(mu));
    std::vector<double> closed;
    for (const auto& e : hessian_q_eigenvalues(mu))
      for (int k = 0; k < e.multiplicity; ++k) closed.push_back(e.value);
    std::sort(closed.begin(), closed.end());
    REQUIRE(closed.size() == static_cast<std::size_t>(es.eigenvalues().size()));
    for (std::size_t k = 0; k < closed.size(); ++k)
      CHECK(std::abs(closed[k] - es.eigenvalues()[static_cast<Eigen::Index>(k)]) < 1e-10);
  }
}

TEST_CASE("Hess q spectrum examples") {
  const auto e = hessian_q_eigenvalues({3, 1.0, 1.0, 3});
  CHECK(e[0].value == -1.0);
  CHECK(e[0].multiplicity == 2);
  CHECK(e[1].value == -1.0);
  CHECK(e[1].multiplicity == 1);
  // the all-ones direction of the block matrix: a + b + 2(n-2)c
  CHECK(e[2].value == -5.0);
  CHECK(e[2].multiplicity == 1);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(4);
  CHECK((hessian_q_matrix({3, 1.0, 1.0, 3}) * ones + 5.0 * ones).norm() < 1e-14);
  CHECK(hessian_q_eigenvalues({3, 2.0, 0.0, 4})[1].value == -12.0);
}

TEST_CASE("hyperbolicity range") {
  for (int n = 3; n <= 6; ++n) {
    const double u3 = 3.0 * (n + 1) / (5.0 * n - 1);
    const RangeCheck r = in_hyperbolicity_range(psi_coeffs(u3, n));
    CHECK(r.closed);
    CHECK_FALSE(r.strict);
  }
  for (int n = 2; n <= 6; ++n) {
    const RangeCheck r = in_hyperbolicity_range(phi_coeffs((n + 1.0) / (2.0 * n), n));
    CHECK(r.closed);
    CHECK_FALSE(r.strict);
    CHECK(in_hyperbolicity_range(phi_coeffs(0.5 * (n + 1.0) / (2.0 * n), n)).strict);
    CHECK_FALSE(in_hyperbolicity_range(phi_coeffs(1.0, n)).closed);
  }
  const RangeCheck bad = in_hyperbolicity_range({3, 1.0, 10.0, 3});
  CHECK_FALSE(bad.closed);
  REQUIRE(bad.violated.size() == 1);
  CHECK(bad.violated[0] == "5c1 <= 6c0");
}

TEST_CASE("negative Hess q spectrum and the strict range") {
  // all three eigenvalues negative is necessary; the first range condition
  // has to be added separately (c0 = 10, c1 = 1 has a negative spectrum)
  Rng rng(14);
  std::uniform_real_distribution<double> u(-1.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const int n = 3 + i % 4;
    const ValuationCoeffs mu{3, u(rng), u(rng), n};
    bool neg = true;
    for (const auto& e : hessian_q_eigenvalues(mu)) neg = neg && e.value < 0.0;
    const bool first = 2.0 * (n - 2) * mu.c0 < (2.0 * n - 3) * mu.c1;
    CHECK(in_hyperbolicity_range(mu).strict == (neg && first));
  }
  bool neg = true;
  for (const auto& e : hessian_q_eigenvalues({3, 10.0, 1.0, 3})) neg = neg && e.value < 0.0;
  CHECK(neg);
  CHECK_FALSE(in_hyperbolicity_range({3, 10.0, 1.0, 3}).closed);
}

TEST_CASE("p_mu positive on positive definite forms in range") {
  Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    const int n = 3 + i % 3;
    const ValuationCoeffs mu = random_in_range(3, n, rng);
    CHECK(p_mu(mu, SymForm(n, testutil::random_spd(2 * n - 1, rng))) > 0.0);
    const ValuationCoeffs m2 = random_in_range(2, n, rng);
    CHECK(p_mu(m2, SymForm(n, testutil::random_spd(2 * n - 1, rng))) > 0.0);
  }
}

TEST_CASE("kernel of p(A, .) is negative for p") {
  Rng rng(16);
  for (int i = 0; i < 300; ++i) {
    const int n = 3 + i % 3;
    const int d = 2 * n - 1;
    const ValuationCoeffs mu = random_in_range(3, n, rng);
    const SymForm a(n, testutil::random_spd(d, rng));
    // project X onto ker p(A, .) along A (p(A, A) > 0)
    const SymForm x0(n, testutil::random_sym(d, rng));
    const double lam = p_mu_polarized(mu, a, x0) / p_mu(mu, a);
    const SymForm x = x0 + (-lam) * a;
    CHECK(std::abs(p_mu_polarized(mu, a, x)) < 1e-10 * std::max(1.0, std::abs(p_mu(mu, x0))));
    CHECK(p_mu(mu, x) < 0.0);
  }
}

TEST_CASE("garding gap examples") {
  Rng rng(17);
  const ValuationCoeffs mu = psi_coeffs(0.0, 3);
  const SymForm a(3, testutil::random_spd(5, rng));
  const GardingGap g = garding_gap(mu, a, 3.0 * a);
  CHECK(std::abs(g.gap) <= 1e-12 * g.scale);
  CHECK(g.lambda == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(g.equality);
  const GardingGap z = garding_gap(mu, a, SymForm::zero(3));
  CHECK(z.gap == 0.0);
  const GardingGap r = garding_gap(mu, a, SymForm(3, testutil::random_sym(5, rng)));
  CHECK(r.gap > 0.0);
  CHECK_FALSE(r.equality);
  Mat neg = Mat::Identity(5, 5);
  neg(2, 2) = -1.0;
  CHECK_THROWS_AS(garding_gap(mu, SymForm(3, neg), a), Error);
}

TEST_CASE("garding sweep at cos^2 theta = 0") {
  const GardingSweep s = garding_sweep(psi_coeffs(0.0, 3), 10000, 2024);
  CHECK(s.cases == 10000);
  CHECK(s.negative == 0);
  CHECK(s.min_relative_gap >= -1e-10);
  CHECK(s.equality_hits == 1000);
  CHECK(s.equality_mismatches == 0);
}

TEST_CASE("witness exists exactly outside the strict range") {
  Rng rng(18);
  std::uniform_real_distribution<double> u(-1.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + i % 2;
    const ValuationCoeffs mu = i % 3 == 0 ? random_in_range(3, n, rng) : ValuationCoeffs{3, u(rng), u(rng), n};
    const RangeCheck r = in_hyperbolicity_range(mu);
    const HyperbolicityWitness w = hyperbolicity_witness(mu);
    CHECK(w.witness.has_value() == !r.strict);
    if (w.witness) {
      const SymForm& x = *w.witness;
      CHECK(std::abs(p_mu_polarized(mu, SymForm::identity(n), x)) < 1e-10);
      CHECK(p_mu(mu, x) >= -1e-10);
      CHECK(x.matrix().norm() > 0.5);
    }
  }
  // boundary: equality with X != 0
  const HyperbolicityWitness b = hyperbolicity_witness(psi_coeffs(0.0, 3));
  CHECK(b.witness.has_value());
  CHECK(std::abs(b.max_eigenvalue) < 1e-12);
}

}
