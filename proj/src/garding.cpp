#include "afval/garding.hpp"

#include <algorithm>
#include <cmath>

#include "afval/constants.hpp"
#include "afval/error.hpp"

namespace afval {

int FrameLabel::row(int n) const {
  if (index == 1) {
    if (!bar) throw Error(ErrorKind::out_of_range, "label 1 (unbarred) is the normal direction");
    return 0;
  }
  if (index < 2 || index > n) throw Error(ErrorKind::out_of_range, "frame label index out of range");
  return bar ? 2 * index - 2 : 2 * index - 3;
}

SymForm::SymForm(int n, Eigen::MatrixXd entries) : n_(n), m_(std::move(entries)) {
  if (n < 2) throw Error(ErrorKind::unsupported_dimension, "SymForm needs n >= 2");
  if (m_.rows() != 2 * n - 1 || m_.cols() != 2 * n - 1)
    throw Error(ErrorKind::dimension_mismatch, "SymForm must be (2n-1) x (2n-1)");
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, m_.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::invalid_argument, "SymForm entries are not symmetric");
}

SymForm SymForm::identity(int n) {
  return SymForm(n, Eigen::MatrixXd::Identity(2 * n - 1, 2 * n - 1));
}

SymForm SymForm::zero(int n) { return SymForm(n, Eigen::MatrixXd::Zero(2 * n - 1, 2 * n - 1)); }

SymForm operator+(const SymForm& a, const SymForm& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::dimension_mismatch, "SymForm sum of different n");
  return SymForm(a.n_, a.m_ + b.m_);
}

SymForm operator*(double s, const SymForm& a) { return SymForm(a.n_, s * a.m_); }

void ValuationCoeffs::validate() const {
  if (degree != 2 && degree != 3)
    throw Error(ErrorKind::unsupported_dimension, "valuation degree must be 2 or 3");
  if (n < degree) throw Error(ErrorKind::unsupported_dimension, "need n >= degree");
  if (!std::isfinite(c0) || !std::isfinite(c1))
    throw Error(ErrorKind::invalid_argument, "coefficients must be finite");
}

double minor(const SymForm& a, const std::vector<FrameLabel>& rows,
             const std::vector<FrameLabel>& cols) {
  if (rows.size() != cols.size() || rows.empty() || rows.size() > 3)
    throw Error(ErrorKind::invalid_argument, "minor needs 1..3 rows and as many columns");
  const int n = a.n();
  std::vector<int> r, c;
  for (const auto& l : rows) r.push_back(l.row(n));
  for (const auto& l : cols) c.push_back(l.row(n));
  auto has_dup = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_dup(r) || has_dup(c)) throw Error(ErrorKind::invalid_argument, "minor has duplicate indices");
  const auto k = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = a.matrix()(r[i], c[j]);
  return sub.determinant();
}

namespace {

void check_dims(const ValuationCoeffs& mu, Eigen::Index rows, Eigen::Index cols) {
  if (rows != 2 * mu.n - 1 || cols != rows)
    throw Error(ErrorKind::dimension_mismatch, "form size does not match the valuation's n");
}

double p2_raw(const ValuationCoeffs& mu, const Eigen::MatrixXd& a) {
  const int n = mu.n;
  const double a11 = a(0, 0);
  const double rest = a.trace() - a11;
  const double s = ((2 * n - 1) * mu.c1 - 2 * (n - 1) * mu.c0) * a11 + (2 * mu.c0 - mu.c1) * rest;
  return s / unit_ball_volume(2 * n - 2);
}

double p3_raw(const ValuationCoeffs& mu, const Eigen::MatrixXd& a) {
  const int n = mu.n;
  auto m2 = [&a](int r1, int r2, int c1, int c2) {
    return a(r1, c1) * a(r2, c2) - a(r1, c2) * a(r2, c1);
  };
  double s1 = 0.0;  // sum_i A^{1bar i}_{1bar i} + A^{1bar ibar}_{1bar ibar}
  double s2 = 0.0;  // sum_{i<j} (four 2x2 principal minors - 2 A^{i ibar}_{j jbar})
  double s3 = 0.0;  // sum_{i,j} A^{i ibar}_{j jbar}
  for (int i = 2; i <= n; ++i) {
    const int ri = 2 * i - 3, rib = 2 * i - 2;
    s1 += m2(0, ri, 0, ri) + m2(0, rib, 0, rib);
    for (int j = 2; j <= n; ++j) {
      const int rj = 2 * j - 3, rjb = 2 * j - 2;
      const double cross = m2(ri, rib, rj, rjb);
      s3 += cross;
      if (j > i)
        s2 += m2(ri, rj, ri, rj) + m2(ri, rjb, ri, rjb) + m2(rib, rj, rib, rj) +
              m2(rib, rjb, rib, rjb) - 2.0 * cross;
    }
  }
  const double k1 = (2 * n - 3) * mu.c1 - 2 * (n - 2) * mu.c0;
  const double k2 = 3.0 * mu.c0 - 2.0 * mu.c1;
  return (k1 * s1 + k2 * s2 + mu.c1 * s3) / unit_ball_volume(2 * n - 3);
}

}  // namespace

double p_mu(const ValuationCoeffs& mu, const Eigen::MatrixXd& a) {
  return mu.degree == 2 ? p2_raw(mu, a) : p3_raw(mu, a);
}

double p_mu(const ValuationCoeffs& mu, const SymForm& a) {
  mu.validate();
  if (a.n() != mu.n) throw Error(ErrorKind::dimension_mismatch, "SymForm n differs from valuation n");
  return p_mu(mu, a.matrix());
}

double p_mu_polarized(const ValuationCoeffs& mu, const Eigen::MatrixXd& a, const Eigen::MatrixXd& x) {
  return 0.5 * (p3_raw(mu, a + x) - p3_raw(mu, a) - p3_raw(mu, x));
}

double p_mu_polarized(const ValuationCoeffs& mu, const SymForm& a, const SymForm& x) {
  mu.validate();
  if (mu.degree != 3) throw Error(ErrorKind::unsupported_dimension, "polarisation needs degree 3");
  if (a.n() != mu.n || x.n() != mu.n)
    throw Error(ErrorKind::dimension_mismatch, "SymForm n differs from valuation n");
  check_dims(mu, a.matrix().rows(), a.matrix().cols());
  return p_mu_polarized(mu, a.matrix(), x.matrix());
}

QHessianEntries hessian_q_entries(const ValuationCoeffs& mu) {
  mu.validate();
  if (mu.degree != 3 || mu.n < 3)
    throw Error(ErrorKind::unsupported_dimension, "Hess q needs degree 3 and n >= 3");
  const int n = mu.n;
  const double a = -2.0 * (2 * (n - 2) * mu.c0 - (n - 3) * mu.c1) / (n - 1);
  return {a, mu.c1 + a, 3.0 * mu.c0 - 2.0 * mu.c1 + a};
}

Eigen::MatrixXd hessian_q_matrix(const ValuationCoeffs& mu) {
  const auto [a, b, c] = hessian_q_entries(mu);
  const int m = 2 * (mu.n - 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(m, m, c);
  for (int i = 0; i < m; i += 2) {
    h(i, i) = h(i + 1, i + 1) = a;
    h(i, i + 1) = h(i + 1, i) = b;
  }
  return h;
}

std::vector<EigenvalueMultiplicity> hessian_q_eigenvalues(const ValuationCoeffs& mu) {
  hessian_q_entries(mu);  // validation
  const int n = mu.n;
  return {{-mu.c1, n - 1},
          {5.0 * mu.c1 - 6.0 * mu.c0, n - 2},
          {-2.0 * (n - 2) * mu.c0 - 3.0 * mu.c1, 1}};
}

RangeCheck in_hyperbolicity_range(const ValuationCoeffs& mu) {
  mu.validate();
  const int n = mu.n;
  struct Cond {
    double lhs, rhs;
    const char* text;
  };
  std::vector<Cond> conds;
  if (mu.degree == 3) {
    conds = {{2.0 * (n - 2) * mu.c0, (2.0 * n - 3) * mu.c1, "2(n-2)c0 <= (2n-3)c1"},
             {5.0 * mu.c1, 6.0 * mu.c0, "5c1 <= 6c0"}};
  } else {
    conds = {{2.0 * (n - 1) * mu.c0, (2.0 * n - 1) * mu.c1, "2(n-1)c0 <= (2n-1)c1"},
             {(4.0 * n + 1) * mu.c1, 2.0 * (3 * n + 1) * mu.c0, "(4n+1)c1 <= 2(3n+1)c0"}};
  }
  RangeCheck out{true, true, {}};
  for (const auto& c : conds) {
    // thresholds computed from cos^2 land on the boundary only up to rounding
    const double tol = 1e-12 * (std::abs(c.lhs) + std::abs(c.rhs));
    if (!(c.lhs < c.rhs - tol)) out.strict = false;
    if (!(c.lhs <= c.rhs + tol)) {
      out.closed = false;
      out.violated.emplace_back(c.text);
    }
  }
  return out;
}

bool is_positive_definite(const SymForm& a, double tol) {
  Eigen::LLT<Eigen::MatrixXd> llt(a.matrix());
  if (llt.info() != Eigen::Success) return false;
  const Eigen::MatrixXd l = llt.matrixL();
  return (l.diagonal().array().square() > tol).all();
}

GardingGap garding_gap(const ValuationCoeffs& mu, const SymForm& a, const SymForm& x) {
  const double pax = p_mu_polarized(mu, a, x);
  if (!is_positive_definite(a)) throw Error(ErrorKind::not_positive_definite, "A is not positive definite");
  const double pa = p3_raw(mu, a.matrix());
  const double px = p3_raw(mu, x.matrix());
  GardingGap g{};
  g.gap = pax * pax - pa * px;
  g.scale = pax * pax + std::abs(pa * px);
  const Eigen::MatrixXd& am = a.matrix();
  const Eigen::MatrixXd& xm = x.matrix();
  g.lambda = (xm.transpose() * am).trace() / (am.transpose() * am).trace();
  g.residual = (xm - g.lambda * am).cwiseAbs().maxCoeff();
  g.equality = g.residual < 1e-8;
  return g;
}

HyperbolicityWitness hyperbolicity_witness(const ValuationCoeffs& mu, double tol) {
  mu.validate();
  if (mu.degree != 3) throw Error(ErrorKind::unsupported_dimension, "witness search needs degree 3");
  const int d = 2 * mu.n - 1;
  const int dim = d * (d + 1) / 2;

  // Frobenius-orthonormal basis of Sym^2
  std::vector<Eigen::MatrixXd> basis;
  basis.reserve(dim);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
      }
      basis.push_back(std::move(e));
    }

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd ell(dim);
  Eigen::MatrixXd g(dim, dim);
  for (int s = 0; s < dim; ++s) {
    ell[s] = p_mu_polarized(mu, id, basis[s]);
    for (int t = s; t < dim; ++t) g(s, t) = g(t, s) = p_mu_polarized(mu, basis[s], basis[t]);
  }

  Eigen::MatrixXd kernel;
  if (ell.norm() == 0.0) {
    kernel = Eigen::MatrixXd::Identity(dim, dim);
  } else {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ell);
    const Eigen::MatrixXd q = qr.householderQ();
    kernel = q.rightCols(dim - 1);
  }
  const Eigen::MatrixXd restricted = kernel.transpose() * g * kernel;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
  const Eigen::Index top = es.eigenvalues().size() - 1;

  HyperbolicityWitness w{};
  w.max_eigenvalue = es.eigenvalues()[top];
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (w.max_eigenvalue < -tol * scale) return w;

  const Eigen::VectorXd coords = kernel * es.eigenvectors().col(top);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
  for (int s = 0; s < dim; ++s) x += coords[s] * basis[s];
  // snap rounding noise so the reported structure is readable
  const double xmax = x.cwiseAbs().maxCoeff();
  x = x.unaryExpr([xmax](double v) { return std::abs(v) < 1e-12 * xmax ? 0.0 : v; });
  const Eigen::MatrixXd off = x - Eigen::MatrixXd(x.diagonal().asDiagonal());
  w.diagonal = off.cwiseAbs().maxCoeff() <= 1e-9 * xmax;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> xs(x);
  w.rank = static_cast<int>((xs.eigenvalues().array().abs() > 1e-9 * xmax).count());
  w.witness = SymForm(mu.n, x);
  return w;
}

}  // namespace afval
