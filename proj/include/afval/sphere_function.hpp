#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "afval/hermitian.hpp"
#include "afval/jet.hpp"

namespace afval {

/// Eigenvalues of f under the spherical Laplacian and under JN(JN .).
struct HarmonicSpectrum {
  double laplace;
  double jn;
};

/// Real function on S^{2n-1}, accessed through its 1-homogeneous extension
/// F(x) = |x| f(x / |x|). Smooth functions also evaluate F on jets, which is
/// how restricted Hessians are formed.
class SphereFunction {
public:
  virtual ~SphereFunction() = default;

  virtual int real_dim() const = 0;
  virtual double eval(std::span<const double> x) const = 0;
  /// Throws unsupported_smoothness for non-smooth functions.
  virtual Jet eval(std::span<const Jet> x) const = 0;
  virtual SmallJet eval(std::span<const SmallJet> x) const = 0;

  virtual bool smooth() const { return true; }
  virtual bool difference_of_supports() const { return true; }
  /// Present when f is a joint eigenfunction of the Laplacian and JN(JN .).
  virtual std::optional<HarmonicSpectrum> spectrum() const { return std::nullopt; }

  double value(const Vec& u) const { return eval(std::span<const double>(u.data(), u.size())); }
};

using SphereFunctionPtr = std::shared_ptr<const SphereFunction>;

/// Implements both `eval` overloads from `template <class T> T extension(std::span<const T>)`.
template <class Derived>
class SmoothSphereFunction : public SphereFunction {
public:
  double eval(std::span<const double> x) const override {
    return static_cast<const Derived&>(*this).template extension<double>(x);
  }
  Jet eval(std::span<const Jet> x) const override {
    return static_cast<const Derived&>(*this).template extension<Jet>(x);
  }
  SmallJet eval(std::span<const SmallJet> x) const override {
    return static_cast<const Derived&>(*this).template extension<SmallJet>(x);
  }
};

template <class T>
T squared_norm(std::span<const T> x) {
  T s = x[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) s = s + x[i] * x[i];
  return s;
}

/// (r^i_j) = Euclidean Hessian of F restricted to T_u, in the adapted frame.
Mat restricted_hessian(const SphereFunction& f, const AdaptedFrame& frame);
Mat restricted_hessian(const SphereFunction& f, const Vec& u);

/// Spherical Laplacian and JN(JN f) read off the restricted Hessian.
struct SecondOrderData {
  double value;
  double laplace;
  double jn_jn;
};
SecondOrderData second_order_data(const SphereFunction& f, const Vec& u);

/// f = c (support function of the ball of radius c at the origin).
class ConstantFunction final : public SmoothSphereFunction<ConstantFunction> {
public:
  ConstantFunction(int real_dim, double c) : dim_(real_dim), c_(c) {}
  int real_dim() const override { return dim_; }
  std::optional<HarmonicSpectrum> spectrum() const override { return HarmonicSpectrum{0.0, 0.0}; }
  double constant() const { return c_; }

  template <class T>
  T extension(std::span<const T> x) const {
    using std::sqrt;
    return sqrt(squared_norm(x)) * c_;
  }

private:
  int dim_;
  double c_;
};

/// f(u) = <v, u>, the support function of the point v.
class LinearFunctional final : public SmoothSphereFunction<LinearFunctional> {
public:
  explicit LinearFunctional(Vec v) : v_(std::move(v)) {}
  int real_dim() const override { return static_cast<int>(v_.size()); }
  std::optional<HarmonicSpectrum> spectrum() const override {
    return HarmonicSpectrum{-(1.0 + real_dim() - 2.0), -1.0};
  }
  const Vec& vector() const { return v_; }

  template <class T>
  T extension(std::span<const T> x) const {
    T s = x[0] * v_[0];
    for (std::size_t i = 1; i < x.size(); ++i) s = s + x[i] * v_[static_cast<Eigen::Index>(i)];
    return s;
  }

private:
  Vec v_;
};

/// f(z) = z^* H z on the sphere for a complex Hermitian H. Traceless H gives
/// an element of H_{1,1}, e.g. Re(z1 conj(z2)) for H = (E12 + E21)/2.
class HermitianQuadratic final : public SmoothSphereFunction<HermitianQuadratic> {
public:
  explicit HermitianQuadratic(const Eigen::MatrixXcd& h);
  static HermitianQuadratic re_z1_conj_z2(int n);

  int real_dim() const override { return static_cast<int>(s_.rows()); }
  std::optional<HarmonicSpectrum> spectrum() const override;
  const Mat& real_form() const { return s_; }
  const Eigen::MatrixXcd& complex_form() const { return h_; }

  template <class T>
  T extension(std::span<const T> x) const {
    using std::sqrt;
    const auto d = static_cast<Eigen::Index>(x.size());
    T q = x[0] * 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      T row = x[0] * s_(i, 0);
      for (Eigen::Index j = 1; j < d; ++j) row = row + x[j] * s_(i, j);
      q = q + x[i] * row;
    }
    return q / sqrt(squared_norm(x));
  }

private:
  Eigen::MatrixXcd h_;
  Mat s_;  // real symmetric 2n x 2n form with x^T S x = z^* H z
  bool traceless_;
};

/// sum_i coef_i f_i.
class LinearCombination final : public SphereFunction {
public:
  LinearCombination(std::vector<double> coefs, std::vector<SphereFunctionPtr> parts);

  int real_dim() const override { return parts_.front()->real_dim(); }
  double eval(std::span<const double> x) const override;
  Jet eval(std::span<const Jet> x) const override;
  SmallJet eval(std::span<const SmallJet> x) const override;
  bool smooth() const override;
  bool difference_of_supports() const override;
  std::optional<HarmonicSpectrum> spectrum() const override;
  const std::vector<double>& coefs() const { return coefs_; }
  const std::vector<SphereFunctionPtr>& parts() const { return parts_; }

private:
  std::vector<double> coefs_;
  std::vector<SphereFunctionPtr> parts_;
};

}  // namespace afval
