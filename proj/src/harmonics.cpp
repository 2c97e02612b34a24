#include "afval/harmonics.hpp"

#include <cmath>

#include "afval/constants.hpp"
#include "afval/error.hpp"

namespace afval {

namespace {

// Jacobi P^{(al,be)} three-term recurrence, coefficients of P_{k+1} from P_k, P_{k-1}:
// P_{k+1} = ((c1 x + c2) P_k - c3 P_{k-1}) / c0
struct Recurrence {
  double c0, c1, c2, c3;
};

Recurrence jacobi_step(int k, double al, double be) {
  const double s = 2.0 * k + al + be;
  return {2.0 * (k + 1) * (k + al + be + 1) * s, (s + 1) * (s + 2) * s, (s + 1) * (al * al - be * be),
          2.0 * (k + al) * (k + be) * (s + 2)};
}

double binomial(int top, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (top - k + i) / i;
  return r;
}

void check_jacobi_args(int l, int a, int b) {
  if (l < 0 || a < 0 || b < 0) throw Error(ErrorKind::out_of_range, "jacobi_Q needs l, a, b >= 0");
}

}  // namespace

double jacobi_Q(int l, int a, int b, double t) {
  check_jacobi_args(l, a, b);
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::out_of_range, "jacobi_Q needs t in [0,1]");
  // weight t^a (1-t)^b on [0,1] is (1+x)^a (1-x)^b with x = 2t-1: alpha = b, beta = a
  const double al = b, be = a, x = 2.0 * t - 1.0;
  double prev = 1.0;
  if (l == 0) return 1.0;
  double cur = (al + 1.0) + (al + be + 2.0) * 0.5 * (x - 1.0);
  for (int k = 1; k < l; ++k) {
    const auto r = jacobi_step(k, al, be);
    const double next = ((r.c1 * x + r.c2) * cur - r.c3 * prev) / r.c0;
    prev = cur;
    cur = next;
  }
  return cur / binomial(l + b, l);
}

std::vector<double> jacobi_Q_coefficients(int l, int a, int b) {
  check_jacobi_args(l, a, b);
  const double al = b, be = a;
  // polynomials in t; x = 2t - 1
  auto times_x = [](const std::vector<double>& p) {
    std::vector<double> r(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[i + 1] += 2.0 * p[i];
      r[i] -= p[i];
    }
    return r;
  };
  std::vector<double> prev{1.0};
  if (l == 0) return prev;
  // P_1 = (al + 1) + (al + be + 2)(x - 1)/2 = (al + 1) + (al + be + 2)(t - 1)
  std::vector<double> cur{(al + 1.0) - (al + be + 2.0), al + be + 2.0};
  for (int k = 1; k < l; ++k) {
    const auto r = jacobi_step(k, al, be);
    std::vector<double> next = times_x(cur);
    for (auto& v : next) v *= r.c1;
    for (std::size_t i = 0; i < cur.size(); ++i) next[i] += r.c2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= r.c3 * prev[i];
    for (auto& v : next) v /= r.c0;
    prev = std::move(cur);
    cur = std::move(next);
  }
  const double norm = binomial(l + b, l);
  for (auto& v : cur) v /= norm;
  return cur;
}

SphericalHarmonic::SphericalHarmonic(int k, int l, int n, Vec pole, HarmonicPart part)
    : k_(k), l_(l), n_(n), e_(std::move(pole)), part_(part) {
  if (n < 2) throw Error(ErrorKind::unsupported_dimension, "spherical functions need n >= 2");
  if (k < 0 || l < 0) throw Error(ErrorKind::out_of_range, "bi-degree must be non-negative");
  if (e_.size() != 2 * n) throw Error(ErrorKind::dimension_mismatch, "pole must lie in R^{2n}");
  if (std::abs(e_.norm() - 1.0) > 1e-12) throw Error(ErrorKind::out_of_range, "pole must be a unit vector");
  // Im <x, e>_C = <x, J e>
  je_ = apply_J(e_);
  const int p = std::abs(k - l);
  q_ = jacobi_Q_coefficients(std::min(k, l), p, n - 2);
}

std::optional<HarmonicSpectrum> SphericalHarmonic::spectrum() const {
  return HarmonicSpectrum{laplace_eigenvalue(k_, l_, n_), jn_eigenvalue(k_, l_)};
}

SphericalHarmonic spherical_function(int k, int l, int n, const Vec& pole, HarmonicPart part) {
  return SphericalHarmonic(k, l, n, pole, part);
}

double laplace_eigenvalue(int k, int l, int n) {
  const double m = k + l;
  return 0.0 - m * (m + 2.0 * n - 2.0);
}

double jn_eigenvalue(int k, int l) {
  const double j = k - l;
  return 0.0 - j * j;
}

SpectralParameters spectral_parameters(const ValuationCoeffs& mu) {
  mu.validate();
  const int n = mu.n;
  if (mu.degree == 2)
    return {2.0 * n * (mu.c1 - mu.c0), 2.0 * mu.c0 - mu.c1, 1.0 / unit_ball_volume(2 * n - 2)};
  const double a = (n - 1) * ((2.0 * n - 3) * mu.c1 - 2.0 * (n - 2) * mu.c0);
  const double b = 2.0 * (n - 2) * mu.c0 - (n - 3.0) * mu.c1;
  return {a - b, b, 1.0 / unit_ball_volume(2 * n - 3)};
}

namespace {

double eigenvalue_from(const SpectralParameters& s, int n, int k, int l) {
  if (k < 0 || l < 0) throw Error(ErrorKind::out_of_range, "bi-degree must be non-negative");
  const double m = k + l;
  const double j = std::abs(k - l);
  const double shifted = (m + n - 1.0) * (m + n - 1.0) - double(n) * n;
  return (s.alpha * (1.0 - j * j) - s.beta * shifted) * s.scale;
}

}  // namespace

double dmu_eigenvalue(const ValuationCoeffs& mu, int k, int l) {
  if (mu.degree != 2) throw Error(ErrorKind::unsupported_dimension, "D_mu spectrum needs degree 2");
  return eigenvalue_from(spectral_parameters(mu), mu.n, k, l);
}

double dmuB_eigenvalue(const ValuationCoeffs& mu, int k, int l) {
  if (mu.degree != 3) throw Error(ErrorKind::unsupported_dimension, "D_{mu,B} spectrum needs degree 3");
  return eigenvalue_from(spectral_parameters(mu), mu.n, k, l);
}

namespace {

// edges computed from cos^2 theta hit the boundary only up to rounding
bool closed_le(double a, double b) { return a <= b + 1e-12 * (std::abs(a) + std::abs(b)); }
bool strict_lt(double a, double b) { return a < b - 1e-12 * (std::abs(a) + std::abs(b)); }

}  // namespace

bool spectrum_window(const ValuationCoeffs& mu) {
  mu.validate();
  const double n = mu.n;
  if (mu.degree == 2)
    return closed_le(2 * (n - 1) * mu.c0, (2 * n - 1) * mu.c1) &&
           strict_lt((4 * n + 1) * mu.c1, 2 * (3 * n + 1) * mu.c0);
  return closed_le(2 * (n - 2) * mu.c0, (2 * n - 3) * mu.c1) &&
         strict_lt((4 * n * n - 9 * n - 3) * mu.c1, 2 * (3 * n * n - 5 * n - 2) * mu.c0);
}

bool spectrum_window_alpha_beta(const ValuationCoeffs& mu) {
  const auto s = spectral_parameters(mu);
  return closed_le(-s.beta, s.alpha) && strict_lt(s.alpha, (2.0 * mu.n + 1) * s.beta);
}

std::vector<SpectrumRow> spectrum_table(const ValuationCoeffs& mu, int kmax) {
  if (kmax < 0) throw Error(ErrorKind::out_of_range, "kmax must be >= 0");
  std::vector<SpectrumRow> rows;
  for (int m = 0; m <= kmax; ++m)
    for (int k = m; k >= 0; --k) {
      const int l = m - k;
      const double ev = mu.degree == 2 ? dmu_eigenvalue(mu, k, l) : dmuB_eigenvalue(mu, k, l);
      rows.push_back({k, l, laplace_eigenvalue(k, l, mu.n), jn_eigenvalue(k, l), ev});
    }
  return rows;
}

SignPattern spectrum_sign_pattern(const ValuationCoeffs& mu, int kmax) {
  SignPattern s{true, true, true};
  for (const auto& r : spectrum_table(mu, kmax)) {
    const int m = r.k + r.l;
    if (m == 0) s.constant_positive = r.eigenvalue > 0.0;
    else if (m == 1) s.linear_zero = s.linear_zero && r.eigenvalue == 0.0;
    else if (!(r.eigenvalue < 0.0)) s.rest_negative = false;
  }
  return s;
}

}  // namespace afval
