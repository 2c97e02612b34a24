#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <span>

namespace afval {

/// Second-order forward-mode jet: value, gradient and Hessian with respect to
/// up to `Cap` seed variables. The Hessian is stored packed (upper
/// triangle, row-major). Operations cost O(vars^2).
template <int Cap>
class BasicJet {
public:
  static constexpr int kMaxVars = Cap;
  static constexpr int kPacked = kMaxVars * (kMaxVars + 1) / 2;

  BasicJet() = default;
  BasicJet(double value, int vars) : v_(value), n_(vars) {
    assert(vars >= 0 && vars <= kMaxVars);
    std::fill_n(g_.begin(), n_, 0.0);
    std::fill_n(h_.begin(), size(), 0.0);
  }

  static BasicJet constant(double value, int vars) { return BasicJet(value, vars); }

  /// Affine function value + <grad, s> of the seed variables s (evaluated at s = 0).
  static BasicJet affine(double value, std::span<const double> grad) {
    BasicJet j(value, static_cast<int>(grad.size()));
    for (int i = 0; i < j.n_; ++i) j.g_[i] = grad[i];
    return j;
  }

  static BasicJet variable(double value, int index, int vars) {
    BasicJet j(value, vars);
    j.g_[index] = 1.0;
    return j;
  }

  int vars() const { return n_; }
  double value() const { return v_; }
  double grad(int i) const { return g_[i]; }
  double hess(int i, int j) const { return h_[packed(i, j)]; }

  BasicJet& operator+=(const BasicJet& o) {
    v_ += o.v_;
    for (int i = 0; i < n_; ++i) g_[i] += o.g_[i];
    for (int k = 0, m = size(); k < m; ++k) h_[k] += o.h_[k];
    return *this;
  }
  BasicJet& operator-=(const BasicJet& o) {
    v_ -= o.v_;
    for (int i = 0; i < n_; ++i) g_[i] -= o.g_[i];
    for (int k = 0, m = size(); k < m; ++k) h_[k] -= o.h_[k];
    return *this;
  }
  BasicJet& operator*=(double s) {
    v_ *= s;
    for (int i = 0; i < n_; ++i) g_[i] *= s;
    for (int k = 0, m = size(); k < m; ++k) h_[k] *= s;
    return *this;
  }
  BasicJet& operator+=(double s) {
    v_ += s;
    return *this;
  }

  /// this += s * o
  BasicJet& axpy(double s, const BasicJet& o) {
    v_ += s * o.v_;
    for (int i = 0; i < n_; ++i) g_[i] += s * o.g_[i];
    for (int k = 0, m = size(); k < m; ++k) h_[k] += s * o.h_[k];
    return *this;
  }

  friend BasicJet operator*(const BasicJet& a, const BasicJet& b) {
    BasicJet r(a.v_ * b.v_, a.n_);
    for (int i = 0; i < a.n_; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    int k = 0;
    for (int i = 0; i < a.n_; ++i)
      for (int j = i; j < a.n_; ++j, ++k)
        r.h_[k] = a.v_ * b.h_[k] + b.v_ * a.h_[k] + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
    return r;
  }

  /// f(a) given f(a.v), f'(a.v), f''(a.v).
  BasicJet chain(double f0, double f1, double f2) const {
    BasicJet r(f0, n_);
    for (int i = 0; i < n_; ++i) r.g_[i] = f1 * g_[i];
    int k = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j, ++k) r.h_[k] = f1 * h_[k] + f2 * g_[i] * g_[j];
    return r;
  }

private:
  int size() const { return n_ * (n_ + 1) / 2; }
  int packed(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  double v_ = 0.0;
  int n_ = 0;
  // only the first n_ / size() entries are live
  std::array<double, kMaxVars> g_;
  std::array<double, kPacked> h_;
};

template <int C>
inline BasicJet<C> operator+(BasicJet<C> a, const BasicJet<C>& b) { return a += b; }
template <int C>
inline BasicJet<C> operator-(BasicJet<C> a, const BasicJet<C>& b) { return a -= b; }
template <int C>
inline BasicJet<C> operator-(BasicJet<C> a) { return a *= -1.0; }
template <int C>
inline BasicJet<C> operator*(BasicJet<C> a, double s) { return a *= s; }
template <int C>
inline BasicJet<C> operator*(double s, BasicJet<C> a) { return a *= s; }
template <int C>
inline BasicJet<C> operator+(BasicJet<C> a, double s) { return a += s; }
template <int C>
inline BasicJet<C> operator+(double s, BasicJet<C> a) { return a += s; }
template <int C>
inline BasicJet<C> operator-(BasicJet<C> a, double s) { return a += -s; }
template <int C>
inline BasicJet<C> operator-(double s, BasicJet<C> a) { return (a *= -1.0) += s; }

template <int C>
inline BasicJet<C> sqrt(const BasicJet<C>& a) {
  const double s = std::sqrt(a.value());
  return a.chain(s, 0.5 / s, -0.25 / (s * a.value()));
}

template <int C>
inline BasicJet<C> inverse(const BasicJet<C>& a) {
  const double r = 1.0 / a.value();
  return a.chain(r, -r * r, 2.0 * r * r * r);
}

template <int C>
inline BasicJet<C> operator/(const BasicJet<C>& a, const BasicJet<C>& b) { return a * inverse(b); }
template <int C>
inline BasicJet<C> operator/(BasicJet<C> a, double s) { return a *= 1.0 / s; }

/// a^p for real p (a > 0 unless p is a non-negative integer).
template <int C>
inline BasicJet<C> pow(const BasicJet<C>& a, double p) {
  const double x = a.value();
  if (p == 0.0) return BasicJet<C>::constant(1.0, a.vars());
  if (p == 1.0) return a;
  if (p == 2.0) return a.chain(x * x, 2.0 * x, 2.0);
  const double f0 = std::pow(x, p);
  const double f1 = p * std::pow(x, p - 1.0);
  const double f2 = p * (p - 1.0) * std::pow(x, p - 2.0);
  return a.chain(f0, f1, f2);
}

inline double value_of(double x) { return x; }
template <int C>
inline double value_of(const BasicJet<C>& x) {
  return x.value();
}

/// Enough variables for restricted Hessians on S^{2n-1}, n <= 6.
using Jet = BasicJet<12>;
/// Derivatives along at most three directions (projection quadratures).
using SmallJet = BasicJet<3>;

}  // namespace afval
