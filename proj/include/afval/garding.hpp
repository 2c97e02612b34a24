#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace afval {

/// Index of an adapted basis vector of R (+) C^{n-1}: `bar1()` is e_1bar,
/// `re(i)` is e_i and `im(i)` is e_ibar for 2 <= i <= n.
struct FrameLabel {
  int index;
  bool bar;

  static FrameLabel bar1() { return {1, true}; }
  static FrameLabel re(int i) { return {i, false}; }
  static FrameLabel im(int i) { return {i, true}; }

  /// Row/column of the label in a (2n-1) x (2n-1) SymForm.
  int row(int n) const;
  bool operator==(const FrameLabel&) const = default;
};

/// Symmetric bilinear form on R (+) C^{n-1}, stored in the adapted order
/// (1bar, 2, 2bar, ..., n, nbar).
class SymForm {
public:
  SymForm(int n, Eigen::MatrixXd entries);

  static SymForm identity(int n);
  static SymForm zero(int n);

  int n() const { return n_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(FrameLabel r, FrameLabel c) const { return m_(r.row(n_), c.row(n_)); }

  friend SymForm operator+(const SymForm& a, const SymForm& b);
  friend SymForm operator*(double s, const SymForm& a);

private:
  int n_;
  Eigen::MatrixXd m_;
};

/// mu = c0 mu_{k,0} + c1 mu_{k,1} on C^n, k = degree.
struct ValuationCoeffs {
  int degree;
  double c0;
  double c1;
  int n;

  /// Throws when degree is not 2 or 3 or n < degree.
  void validate() const;
};

/// Determinant of the submatrix with the given rows and columns (<= 3 each).
double minor(const SymForm& a, const std::vector<FrameLabel>& rows,
             const std::vector<FrameLabel>& cols);

/// p_mu(A): linear in A for degree 2, quadratic for degree 3.
double p_mu(const ValuationCoeffs& mu, const SymForm& a);
/// Raw-matrix fast path used by the sphere kernels (no validation).
double p_mu(const ValuationCoeffs& mu, const Eigen::MatrixXd& a);

/// Polarisation of the degree-3 polynomial: (p(A+X) - p(A) - p(X)) / 2.
double p_mu_polarized(const ValuationCoeffs& mu, const SymForm& a, const SymForm& x);
double p_mu_polarized(const ValuationCoeffs& mu, const Eigen::MatrixXd& a, const Eigen::MatrixXd& x);

/// Entries of the Hessian of the reduced quadratic q (diagonal X with the
/// 1bar entry eliminated through p_mu(I, X) = 0).
struct QHessianEntries {
  double a;
  double b;
  double c;
};

QHessianEntries hessian_q_entries(const ValuationCoeffs& mu);
/// The explicit 2(n-1) x 2(n-1) block matrix [[a,b,c,c,..],[b,a,c,c,..],...].
Eigen::MatrixXd hessian_q_matrix(const ValuationCoeffs& mu);

struct EigenvalueMultiplicity {
  double value;
  int multiplicity;
};

/// Closed form spectrum of Hess q: (-c1, n-1), (5c1 - 6c0, n-2),
/// (-2(n-2)c0 - 3c1, 1).
std::vector<EigenvalueMultiplicity> hessian_q_eigenvalues(const ValuationCoeffs& mu);

struct RangeCheck {
  bool strict;
  bool closed;
  /// Human-readable conditions that fail in the closed sense.
  std::vector<std::string> violated;
};

/// Degree 3: 2(n-2)c0 < (2n-3)c1 and 5c1 < 6c0.
/// Degree 2: 2(n-1)c0 <= (2n-1)c1 and (4n+1)c1 <= 2(3n+1)c0.
RangeCheck in_hyperbolicity_range(const ValuationCoeffs& mu);

struct GardingGap {
  double gap;       ///< p(A,X)^2 - p(A) p(X)
  double scale;     ///< p(A,X)^2 + |p(A) p(X)|, for relative tolerances
  double lambda;    ///< fitted X ~ lambda A
  double residual;  ///< max |X - lambda A|
  bool equality;    ///< residual below 1e-8
};

GardingGap garding_gap(const ValuationCoeffs& mu, const SymForm& a, const SymForm& x);

bool is_positive_definite(const SymForm& a, double tol = 1e-12);

/// Search for X != 0 with p_mu(I, X) = 0 and p_mu(X) >= 0, i.e. a witness
/// that p_mu fails the strict hyperbolicity statement at A = I. Exact: the
/// maximum of p_mu on the unit sphere of ker p_mu(I, .) is computed as an
/// eigenvalue problem on Sym^2.
struct HyperbolicityWitness {
  double max_eigenvalue;  ///< of p_mu restricted to ker p_mu(I, .), Frobenius metric
  std::optional<SymForm> witness;
  bool diagonal = false;
  int rank = 0;
};

HyperbolicityWitness hyperbolicity_witness(const ValuationCoeffs& mu, double tol = 1e-12);

}  // namespace afval
