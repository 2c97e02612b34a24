#pragma once

#include <vector>

#include "afval/garding.hpp"
#include "afval/sphere_function.hpp"

namespace afval {

/// Q_l(a, b, .) on [0,1]: orthogonal for the weight t^a (1-t)^b, Q_l(a, b, 1) = 1.
double jacobi_Q(int l, int a, int b, double t);
/// Monomial coefficients q_0..q_l of Q_l(a, b, t) in t.
std::vector<double> jacobi_Q_coefficients(int l, int a, int b);

enum class HarmonicPart { real, imag };

/// Re or Im of w -> P_{k,l}(<w, e>_C), an element of H_{k,l} with P(e) = 1.
/// <w, e>_C = <w, e> + i <w, J e>.
class SphericalHarmonic final : public SmoothSphereFunction<SphericalHarmonic> {
public:
  SphericalHarmonic(int k, int l, int n, Vec pole, HarmonicPart part = HarmonicPart::real);

  int real_dim() const override { return 2 * n_; }
  std::optional<HarmonicSpectrum> spectrum() const override;

  int k() const { return k_; }
  int l() const { return l_; }
  int n() const { return n_; }
  const Vec& pole() const { return e_; }
  HarmonicPart part() const { return part_; }

  template <class T>
  T extension(std::span<const T> x) const;

private:
  int k_, l_, n_;
  Vec e_, je_;
  HarmonicPart part_;
  std::vector<double> q_;  // Q_min(k,l)(|k-l|, n-2, .)
};

SphericalHarmonic spherical_function(int k, int l, int n, const Vec& pole,
                                     HarmonicPart part = HarmonicPart::real);

double laplace_eigenvalue(int k, int l, int n);
double jn_eigenvalue(int k, int l);

/// alpha, beta of the eigenvalue form alpha (1 - j^2) - beta ((m+n-1)^2 - n^2)
/// (before division by the ball-volume constant), m = k + l, j = |k - l|.
/// Degree 2 describes D_mu; degree 3 describes D_{mu,B}.
struct SpectralParameters {
  double alpha;
  double beta;
  double scale;  ///< 1 / omega_{2n-2} or 1 / omega_{2n-3}
};
SpectralParameters spectral_parameters(const ValuationCoeffs& mu);

double dmu_eigenvalue(const ValuationCoeffs& mu, int k, int l);
double dmuB_eigenvalue(const ValuationCoeffs& mu, int k, int l);

/// Literal linear conditions on (c0, c1) under which the operator has exactly
/// one positive eigenvalue and kernel H_{1,0} + H_{0,1}.
bool spectrum_window(const ValuationCoeffs& mu);
/// -beta <= alpha < (2n+1) beta.
bool spectrum_window_alpha_beta(const ValuationCoeffs& mu);

struct SpectrumRow {
  int k;
  int l;
  double laplace;
  double jn;
  double eigenvalue;
};
std::vector<SpectrumRow> spectrum_table(const ValuationCoeffs& mu, int kmax);

/// Sign pattern check: lambda(0,0) > 0, lambda(1,0) = lambda(0,1) = 0 and
/// lambda < 0 for 2 <= k + l <= kmax.
struct SignPattern {
  bool constant_positive;
  bool linear_zero;
  bool rest_negative;
  bool ok() const { return constant_positive && linear_zero && rest_negative; }
};
SignPattern spectrum_sign_pattern(const ValuationCoeffs& mu, int kmax);

// ---------------------------------------------------------------------------

template <class T>
T SphericalHarmonic::extension(std::span<const T> x) const {
  using std::pow;
  // zeta = <x, e>_C
  T zr = x[0] * e_[0];
  T zi = x[0] * je_[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    zr = zr + x[i] * e_[ii];
    zi = zi + x[i] * je_[ii];
  }
  const int p = k_ >= l_ ? k_ - l_ : l_ - k_;
  // zeta^p (or its conjugate when k < l)
  T pr = x[0] * 0.0 + 1.0;
  T pi = x[0] * 0.0;
  for (int s = 0; s < p; ++s) {
    T nr = pr * zr - pi * zi;
    T ni = pr * zi + pi * zr;
    pr = nr;
    pi = ni;
  }
  if (k_ < l_) pi = pi * -1.0;
  const T r2 = squared_norm(x);
  const T a = zr * zr + zi * zi;
  // homogeneous form of Q(|zeta|^2 / r^2) r^{2 deg}
  const int deg = static_cast<int>(q_.size()) - 1;
  T poly = x[0] * 0.0 + q_[static_cast<std::size_t>(deg)];
  T rp = r2;
  for (int j = deg - 1; j >= 0; --j) {
    poly = poly * a + rp * q_[static_cast<std::size_t>(j)];
    if (j > 0) rp = rp * r2;
  }
  const T radial = pow(r2, 0.5 * (1.0 - (k_ + l_)));
  return (part_ == HarmonicPart::real ? pr : pi) * poly * radial;
}

}  // namespace afval
