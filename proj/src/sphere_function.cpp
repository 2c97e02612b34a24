#include "afval/sphere_function.hpp"

#include <cmath>

#include "afval/error.hpp"

namespace afval {

Mat restricted_hessian(const SphereFunction& f, const AdaptedFrame& frame) {
  const auto dim = frame.base.size();
  const int vars = static_cast<int>(dim - 1);
  if (vars > Jet::kMaxVars) throw Error(ErrorKind::unsupported_dimension, "jet capacity exceeded");
  if (!f.smooth()) throw Error(ErrorKind::unsupported_smoothness, "function is not twice differentiable");
  std::vector<Jet> x;
  x.reserve(static_cast<std::size_t>(dim));
  std::array<double, Jet::kMaxVars> grad{};
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (int j = 0; j < vars; ++j) grad[j] = frame.tangent(i, j);
    x.push_back(Jet::affine(frame.base[i], std::span<const double>(grad.data(), vars)));
  }
  const Jet fx = f.eval(std::span<const Jet>(x));
  Mat r(vars, vars);
  for (int i = 0; i < vars; ++i)
    for (int j = i; j < vars; ++j) r(i, j) = r(j, i) = fx.hess(i, j);
  return r;
}

Mat restricted_hessian(const SphereFunction& f, const Vec& u) {
  return restricted_hessian(f, adapted_frame(u));
}

SecondOrderData second_order_data(const SphereFunction& f, const Vec& u) {
  const Mat r = restricted_hessian(f, u);
  const double v = f.value(u);
  return {v, r.trace() - static_cast<double>(r.rows()) * v, r(0, 0) - v};
}

HermitianQuadratic::HermitianQuadratic(const Eigen::MatrixXcd& h) : h_(h) {
  if (h.rows() != h.cols() || h.rows() < 1)
    throw Error(ErrorKind::dimension_mismatch, "Hermitian form must be square");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorKind::invalid_argument, "matrix is not Hermitian");
  // z^* H z = x^T Re(realify(H)) x with z_i = x_i + i y_i
  s_ = realify(h);
  s_ = 0.5 * (s_ + s_.transpose());
  traceless_ = std::abs(h.trace().real()) <= 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff());
}

HermitianQuadratic HermitianQuadratic::re_z1_conj_z2(int n) {
  if (n < 2) throw Error(ErrorKind::unsupported_dimension, "Re(z1 conj z2) needs n >= 2");
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  h(0, 1) = h(1, 0) = 0.5;
  return HermitianQuadratic(h);
}

std::optional<HarmonicSpectrum> HermitianQuadratic::spectrum() const {
  if (!traceless_) return std::nullopt;
  return HarmonicSpectrum{-2.0 * static_cast<double>(real_dim()), 0.0};
}

LinearCombination::LinearCombination(std::vector<double> coefs, std::vector<SphereFunctionPtr> parts)
    : coefs_(std::move(coefs)), parts_(std::move(parts)) {
  if (parts_.empty() || coefs_.size() != parts_.size())
    throw Error(ErrorKind::invalid_argument, "linear combination needs matching, non-empty lists");
  for (const auto& p : parts_)
    if (!p || p->real_dim() != parts_.front()->real_dim())
      throw Error(ErrorKind::dimension_mismatch, "linear combination of functions on different spheres");
}

double LinearCombination::eval(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += coefs_[i] * parts_[i]->eval(x);
  return s;
}

namespace {

template <class J>
J combine(const std::vector<double>& coefs, const std::vector<SphereFunctionPtr>& parts, std::span<const J> x) {
  J s = J::constant(0.0, x[0].vars());
  for (std::size_t i = 0; i < parts.size(); ++i) s.axpy(coefs[i], parts[i]->eval(x));
  return s;
}

}  // namespace

Jet LinearCombination::eval(std::span<const Jet> x) const { return combine(coefs_, parts_, x); }
SmallJet LinearCombination::eval(std::span<const SmallJet> x) const { return combine(coefs_, parts_, x); }

bool LinearCombination::smooth() const {
  for (const auto& p : parts_)
    if (!p->smooth()) return false;
  return true;
}

bool LinearCombination::difference_of_supports() const {
  for (const auto& p : parts_)
    if (!p->difference_of_supports()) return false;
  return true;
}

std::optional<HarmonicSpectrum> LinearCombination::spectrum() const {
  const auto first = parts_.front()->spectrum();
  if (!first) return std::nullopt;
  for (const auto& p : parts_) {
    const auto s = p->spectrum();
    if (!s || s->laplace != first->laplace || s->jn != first->jn) return std::nullopt;
  }
  return first;
}

}  // namespace afval
