#include "afval/sphere_calc.hpp"

#include <algorithm>

#include "afval/constants.hpp"
#include "afval/error.hpp"

namespace afval {

double quadrature_tolerance(const SphereGrid& grid) {
  return grid.method == GridMethod::product ? kProductQuadTol : 0.0;
}

namespace {

void check_function(const ValuationCoeffs& mu, const SphereFunction& f) {
  if (f.real_dim() != 2 * mu.n) throw Error(ErrorKind::dimension_mismatch, "function lives on another sphere");
}

void check_smooth(const SphereFunction& f) {
  if (!f.smooth()) throw Error(ErrorKind::unsupported_smoothness, "operator slots need C^2 functions");
}

}  // namespace

double D_mu(const ValuationCoeffs& mu, const SphereFunction& f, const Vec& u) {
  mu.validate();
  if (mu.degree != 2) throw Error(ErrorKind::invalid_argument, "degree 3 needs two arguments");
  check_function(mu, f);
  check_smooth(f);
  return p_mu(mu, restricted_hessian(f, u));
}

double D_mu(const ValuationCoeffs& mu, const SphereFunction& f1, const SphereFunction& f2, const Vec& u) {
  mu.validate();
  if (mu.degree != 3) throw Error(ErrorKind::invalid_argument, "degree 2 takes one argument");
  check_function(mu, f1);
  check_function(mu, f2);
  check_smooth(f1);
  check_smooth(f2);
  const AdaptedFrame fr = adapted_frame(u);
  return p_mu_polarized(mu, restricted_hessian(f1, fr), restricted_hessian(f2, fr));
}

double D_mu2_route(const ValuationCoeffs& mu, double value, double laplace, double jn_jn) {
  const int n = mu.n;
  const double s = 2.0 * n * (mu.c1 - mu.c0) * jn_jn + (2.0 * mu.c0 - mu.c1) * laplace +
                   (2.0 * (n - 1) * mu.c0 + mu.c1) * value;
  return s / unit_ball_volume(2 * n - 2);
}

double D_mu2_route(const ValuationCoeffs& mu, const SphereFunction& f, const Vec& u) {
  mu.validate();
  if (mu.degree != 2) throw Error(ErrorKind::invalid_argument, "this route is for degree 2");
  const auto s = f.spectrum();
  if (!s) throw Error(ErrorKind::unsupported_smoothness, "no analytic Laplacian for this function");
  const double v = f.value(u);
  return D_mu2_route(mu, v, s->laplace * v, s->jn * v);
}

double D_mu_B_route(const ValuationCoeffs& mu, double value, double laplace, double jn_jn) {
  const int n = mu.n;
  const double a = (n - 1) * ((2.0 * n - 3) * mu.c1 - 2.0 * (n - 2) * mu.c0);
  const double b = 2.0 * (n - 2) * mu.c0 - (n - 3.0) * mu.c1;
  return ((a - b) * jn_jn + b * laplace + (a + 2.0 * (n - 1) * b) * value) / unit_ball_volume(2 * n - 3);
}

double D_mu_B(const ValuationCoeffs& mu, const SphereFunction& f, const Vec& u) {
  mu.validate();
  if (mu.degree != 3) throw Error(ErrorKind::invalid_argument, "D_{mu,B} needs degree 3");
  check_function(mu, f);
  if (const auto s = f.spectrum()) {
    const double v = f.value(u);
    return D_mu_B_route(mu, v, s->laplace * v, s->jn * v);
  }
  const ConstantFunction one(2 * mu.n, 1.0);
  return D_mu(mu, one, f, u);
}

double area_measure_density(const ValuationCoeffs& mu, const ConvexBody& k, const Vec& u) {
  if (mu.degree == 3) return area_measure_density(mu, k, k, u);
  const BodySupport h(std::make_shared<const ConvexBody>(k));
  return D_mu(mu, h, u);
}

double area_measure_density(const ValuationCoeffs& mu, const ConvexBody& k1, const ConvexBody& k2,
                            const Vec& u) {
  const BodySupport h1(std::make_shared<const ConvexBody>(k1));
  const BodySupport h2(std::make_shared<const ConvexBody>(k2));
  return D_mu(mu, h1, h2, u);
}

GridIntegrals mixed_integrals(const ValuationCoeffs& mu, const std::vector<SphereFunctionPtr>& fs,
                              const std::vector<MixedTerm>& terms, const SphereGrid& grid, Exec exec) {
  mu.validate();
  if (grid.n != mu.n) throw Error(ErrorKind::dimension_mismatch, "grid and valuation differ in n");
  const int count = static_cast<int>(fs.size());
  std::vector<char> need_hessian(fs.size(), 0), need_value(fs.size(), 0);
  for (const auto& t : terms) {
    const int second_slots = mu.degree == 3 ? 2 : 1;
    const int idx[3] = {t.first, t.second, t.third};
    for (int s = 0; s <= second_slots; ++s)
      if (idx[s] < 0 || idx[s] >= count) throw Error(ErrorKind::invalid_argument, "mixed term index out of range");
    need_value[t.first] = 1;
    need_hessian[t.second] = 1;
    if (mu.degree == 3) need_hessian[t.third] = 1;
  }
  for (int i = 0; i < count; ++i) {
    check_function(mu, *fs[i]);
    if (need_hessian[i]) check_smooth(*fs[i]);
  }
  const double inv_k = 1.0 / mu.degree;
  const int m = static_cast<int>(terms.size());

  auto kernel = [&](const Eigen::VectorXd& u, std::span<double> out) {
    const AdaptedFrame fr = adapted_frame(u);
    std::vector<Mat> r(fs.size());
    std::vector<double> v(fs.size(), 0.0);
    for (int i = 0; i < count; ++i) {
      if (need_hessian[i]) r[i] = restricted_hessian(*fs[i], fr);
      if (need_value[i]) v[i] = fs[i]->value(u);
    }
    for (int t = 0; t < m; ++t) {
      const auto& tm = terms[t];
      const double d = mu.degree == 2 ? p_mu(mu, r[tm.second]) : p_mu_polarized(mu, r[tm.second], r[tm.third]);
      out[t] = inv_k * v[tm.first] * d;
    }
  };
  const Eigen::MatrixXd values = map_nodes(grid, m, kernel, exec);
  return integrate_columns(grid, values);
}

RouteValue valuation_operator_route(const ValuationCoeffs& mu, const std::vector<SphereFunctionPtr>& args,
                                    const SphereGrid& grid, Exec exec) {
  mu.validate();
  if (static_cast<int>(args.size()) != mu.degree)
    throw Error(ErrorKind::invalid_argument, "number of arguments must equal the degree");
  MixedTerm t{0, 1, mu.degree == 3 ? 2 : -1};
  const auto r = mixed_integrals(mu, args, {t}, grid, exec);
  return {r.value[0], r.se(0), quadrature_tolerance(grid)};
}

RouteValue integrate(const SphereFunction& f, const SphereGrid& grid, Exec exec) {
  auto kernel = [&](const Eigen::VectorXd& u, std::span<double> out) { out[0] = f.value(u); };
  const auto r = integrate_columns(grid, map_nodes(grid, 1, kernel, exec));
  return {r.value[0], r.se(0), quadrature_tolerance(grid)};
}

}  // namespace afval
