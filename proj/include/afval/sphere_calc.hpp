#pragma once

#include <vector>

#include "afval/bodies.hpp"
#include "afval/exec.hpp"
#include "afval/garding.hpp"
#include "afval/sphere_function.hpp"
#include "afval/sphere_grid.hpp"

namespace afval {

/// Absolute quadrature tolerance attached to product-grid results.
inline constexpr double kProductQuadTol = 1e-6;

double quadrature_tolerance(const SphereGrid& grid);

/// D_mu(f)(u) = p_mu(restricted Hessian of f); degree 2 only.
double D_mu(const ValuationCoeffs& mu, const SphereFunction& f, const Vec& u);
/// D_mu(f1, f2)(u) = polarised p_mu of the two restricted Hessians; degree 3.
double D_mu(const ValuationCoeffs& mu, const SphereFunction& f1, const SphereFunction& f2, const Vec& u);

/// Degree-2 operator written through the Laplacian and JN(JN .):
/// [2n(c1-c0) JN(JN f) + (2c0-c1) Lap f + (2(n-1)c0+c1) f] / omega_{2n-2}.
double D_mu2_route(const ValuationCoeffs& mu, double value, double laplace, double jn_jn);
/// Uses the analytic spectrum of f; throws unsupported_smoothness without one.
double D_mu2_route(const ValuationCoeffs& mu, const SphereFunction& f, const Vec& u);

/// D_{mu,B}(f) = D_mu(1, f): analytic [(a-b) JN(JN f) + b Lap f + (a+2(n-1)b) f] / omega_{2n-3}
/// when f has a spectrum, the restricted-Hessian route otherwise.
double D_mu_B(const ValuationCoeffs& mu, const SphereFunction& f, const Vec& u);
double D_mu_B_route(const ValuationCoeffs& mu, double value, double laplace, double jn_jn);

/// Density of S_mu(K) (degree 2) or S_mu(K1, K2) (degree 3) at u.
double area_measure_density(const ValuationCoeffs& mu, const ConvexBody& k, const Vec& u);
double area_measure_density(const ValuationCoeffs& mu, const ConvexBody& k1, const ConvexBody& k2,
                            const Vec& u);

/// One mixed value (1/k) int f_first D_mu(f_second[, f_third]) du.
struct MixedTerm {
  int first;
  int second;
  int third = -1;
};

/// Several mixed values over one grid with their joint covariance. Only the
/// functions in the second/third slots need to be smooth.
GridIntegrals mixed_integrals(const ValuationCoeffs& mu, const std::vector<SphereFunctionPtr>& fs,
                              const std::vector<MixedTerm>& terms, const SphereGrid& grid,
                              Exec exec = Exec::parallel);

struct RouteValue {
  double value;
  double se;
  double quad_tol;
};

/// degree 2: 1/2 int f D_mu(g) du; degree 3: 1/3 int f D_mu(g, h) du.
RouteValue valuation_operator_route(const ValuationCoeffs& mu, const std::vector<SphereFunctionPtr>& args,
                                    const SphereGrid& grid, Exec exec = Exec::parallel);

/// Weighted integral of f over the grid, with SE.
RouteValue integrate(const SphereFunction& f, const SphereGrid& grid, Exec exec = Exec::parallel);

}  // namespace afval
