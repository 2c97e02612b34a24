#include "afval/hermitian.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "afval/error.hpp"
#include "afval/rng.hpp"

namespace afval {

AmbientSpace::AmbientSpace(int n) : n_(n), j_(Mat::Zero(2 * n, 2 * n)) {
  if (n < 1) throw Error(ErrorKind::out_of_range, "complex dimension must be >= 1");
  for (int i = 0; i < n; ++i) {
    j_(2 * i + 1, 2 * i) = 1.0;
    j_(2 * i, 2 * i + 1) = -1.0;
  }
}

Vec AmbientSpace::apply_J(const Vec& v) const { return afval::apply_J(v); }

double AmbientSpace::kahler_form(const Vec& u, const Vec& v) const {
  return afval::kahler_form(u, v);
}

Vec apply_J(const Vec& v) {
  Vec w(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    w[i] = -v[i + 1];
    w[i + 1] = v[i];
  }
  return w;
}

double kahler_form(const Vec& u, const Vec& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < u.size(); i += 2) s += u[i] * v[i + 1] - u[i + 1] * v[i];
  return s;
}

Subspace::Subspace(Mat frame, bool repair) : frame_(std::move(frame)) {
  if (frame_.cols() < 1 || frame_.cols() > frame_.rows())
    throw Error(ErrorKind::degenerate_frame, "frame must have 1..dim columns");
  auto defect = [this] {
    const Mat g = frame_.transpose() * frame_;
    return (g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  };
  if (defect() > 1e-12 && repair) {
    Eigen::HouseholderQR<Mat> qr(frame_);
    Mat q = qr.householderQ() * Mat::Identity(frame_.rows(), frame_.cols());
    // keep orientation of the input columns
    for (Eigen::Index c = 0; c < q.cols(); ++c)
      if (q.col(c).dot(frame_.col(c)) < 0) q.col(c) *= -1.0;
    if ((q.transpose() * frame_).diagonal().cwiseAbs().minCoeff() < 1e-8)
      throw Error(ErrorKind::degenerate_frame, "rank-deficient frame");
    frame_ = std::move(q);
  }
  if (defect() > 1e-12) throw Error(ErrorKind::degenerate_frame, "frame is not orthonormal");
}

double kahler_angle_sq(const Subspace& e) {
  if (e.k() != 2 && e.k() != 3)
    throw Error(ErrorKind::unsupported_dimension, "Kahler angle needs k in {2,3}");
  const Mat& f = e.frame();
  double s = 0.0;
  for (int i = 0; i < e.k(); ++i)
    for (int j = i + 1; j < e.k(); ++j) {
      const double w = kahler_form(f.col(i), f.col(j));
      s += w * w;
    }
  return s;
}

Eigen::MatrixXcd haar_unitary_complex(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::out_of_range, "haar_unitary needs n >= 1");
  Rng rng(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = std::complex<double>(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
  }
  return q;
}

Mat realify(const Eigen::MatrixXcd& u) {
  const auto n = u.rows();
  Mat r(2 * n, 2 * u.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const double a = u(i, j).real();
      const double b = u(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

Mat haar_unitary(int n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::out_of_range, "haar_unitary needs n >= 2");
  return realify(haar_unitary_complex(n, seed));
}

Subspace canonical_orbit_representative(int n, int k, double cos2theta) {
  if (k != 2 && k != 3)
    throw Error(ErrorKind::unsupported_dimension, "orbit sampling needs k in {2,3}");
  if (n < k) throw Error(ErrorKind::unsupported_dimension, "orbit sampling needs n >= k");
  if (!(cos2theta >= 0.0 && cos2theta <= 1.0))
    throw Error(ErrorKind::out_of_range, "cos2theta must lie in [0,1]");
  const double c = std::sqrt(cos2theta);
  const double s = std::sqrt(1.0 - cos2theta);
  Mat f = Mat::Zero(2 * n, k);
  f(0, 0) = 1.0;  // e1 = x1 axis
  f(1, 1) = c;    // J e1 = y1 axis
  f(2, 1) = s;    // e2 = x2 axis
  if (k == 3) f(4, 2) = 1.0;  // e3 = x3 axis
  return Subspace(std::move(f));
}

Subspace sample_orbit(int n, int k, double cos2theta, std::uint64_t seed) {
  const Subspace e0 = canonical_orbit_representative(n, k, cos2theta);
  // One orthonormalisation pass absorbs the rounding of the product.
  return Subspace(haar_unitary(n, seed) * e0.frame(), /*repair=*/true);
}

AdaptedFrame adapted_frame(const Vec& u) {
  const auto dim = u.size();
  if (dim < 4 || dim % 2 != 0)
    throw Error(ErrorKind::dimension_mismatch, "adapted_frame needs u in R^{2n}, n >= 2");
  if (std::abs(u.norm() - 1.0) > 1e-8)
    throw Error(ErrorKind::out_of_range, "adapted_frame needs a unit vector");
  const int n = static_cast<int>(dim / 2);

  Mat basis(dim, dim);  // orthonormal set built so far: u, Ju, e2, e2bar, ...
  basis.col(0) = u;
  basis.col(1) = apply_J(u);
  Eigen::VectorXd residual2 = Eigen::VectorXd::Ones(dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    residual2[c] -= basis(c, 0) * basis(c, 0) + basis(c, 1) * basis(c, 1);

  for (int i = 1; i < n; ++i) {
    Eigen::Index pivot = 0;
    residual2.maxCoeff(&pivot);
    const Eigen::Index filled = 2 * i;
    Vec v = -basis.leftCols(filled) * basis.row(pivot).head(filled).transpose();
    v[pivot] += 1.0;
    v.normalize();
    // second Gram-Schmidt pass for stability
    v -= basis.leftCols(filled) * (basis.leftCols(filled).transpose() * v);
    v.normalize();
    basis.col(filled) = v;
    basis.col(filled + 1) = apply_J(v);
    for (Eigen::Index c = 0; c < dim; ++c)
      residual2[c] -= basis(c, filled) * basis(c, filled) + basis(c, filled + 1) * basis(c, filled + 1);
  }
  return AdaptedFrame{u, basis.rightCols(dim - 1)};
}

}  // namespace afval
