#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace afval {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// C^n identified with R^{2n} through coordinates (x1, y1, ..., xn, yn).
/// J maps the x_i axis to the y_i axis; omega(u, v) = <Ju, v>.
class AmbientSpace {
public:
  explicit AmbientSpace(int n);

  int n() const { return n_; }
  int real_dim() const { return 2 * n_; }

  /// J as an explicit 2n x 2n matrix.
  const Mat& J() const { return j_; }

  /// J applied to v without a matrix product (exact coordinate permutation).
  Vec apply_J(const Vec& v) const;
  double kahler_form(const Vec& u, const Vec& v) const;

private:
  int n_;
  Mat j_;
};

Vec apply_J(const Vec& v);
double kahler_form(const Vec& u, const Vec& v);

/// Real k-dimensional subspace given by an orthonormal frame (columns).
class Subspace {
public:
  /// Throws degenerate_frame when the columns are not orthonormal to 1e-12
  /// (after a single re-orthonormalisation attempt when `repair` is set).
  explicit Subspace(Mat frame, bool repair = false);

  int k() const { return static_cast<int>(frame_.cols()); }
  int real_dim() const { return static_cast<int>(frame_.rows()); }
  const Mat& frame() const { return frame_; }
  /// Orthogonal projector onto the subspace.
  Mat projector() const { return frame_ * frame_.transpose(); }

private:
  Mat frame_;
};

/// |omega restricted to E|^2 = sum_{i<j} omega(v_i, v_j)^2 for k in {2, 3}.
double kahler_angle_sq(const Subspace& e);

/// Haar-random element of U(n) written as a real orthogonal 2n x 2n matrix
/// commuting with J. Complex Gaussian + QR with diagonal phase fix.
Mat haar_unitary(int n, std::uint64_t seed);
Eigen::MatrixXcd haar_unitary_complex(int n, std::uint64_t seed);
/// Realification of a complex n x n matrix in the (x1, y1, ...) convention.
Mat realify(const Eigen::MatrixXcd& u);

/// Canonical representative of the U(n)-orbit with the given cos^2 of the
/// Kahler angle: span{e1, cos(t) J e1 + sin(t) e2} (k = 2), plus e3 (k = 3).
Subspace canonical_orbit_representative(int n, int k, double cos2theta);

/// U * E0 with U Haar-distributed; kahler_angle_sq of the result is cos2theta.
Subspace sample_orbit(int n, int k, double cos2theta, std::uint64_t seed);

/// Orthonormal basis (e_1bar, e_2, e_2bar, ..., e_n, e_nbar) of T_u S^{2n-1}
/// with e_1bar = J u and e_ibar = J e_i. Stored as the columns of `tangent`.
struct AdaptedFrame {
  Vec base;
  Mat tangent;
};

AdaptedFrame adapted_frame(const Vec& u);

}  // namespace afval
