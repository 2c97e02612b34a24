#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "afval/bodies.hpp"
#include "afval/exec.hpp"
#include "afval/garding.hpp"
#include "afval/sphere_calc.hpp"

namespace afval {

enum class Family { phi, psi, raw };

std::string to_string(Family f);
Family parse_family(const std::string& s);

/// c0 mu_{k,0} + c1 mu_{k,1}, optionally tagged with the orbit family it
/// came from (cos^2 of the Kahler angle stored, never the angle).
struct UnitaryValuation {
  ValuationCoeffs coeffs;
  Family family = Family::raw;
  double cos2theta = 0.0;

  int degree() const { return coeffs.degree; }
  int n() const { return coeffs.n; }

  static UnitaryValuation phi(double cos2theta, int n);
  static UnitaryValuation psi(double cos2theta, int n);
  static UnitaryValuation raw(int degree, double c0, double c1, int n);
};

/// Coefficients of phi_theta (degree 2) and psi_theta (degree 3) in the basis mu_{k,0}, mu_{k,1}.
ValuationCoeffs phi_coeffs(double cos2theta, int n);
ValuationCoeffs psi_coeffs(double cos2theta, int n);

/// c0 (1 - cos^2 theta(E)) + c1 cos^2 theta(E), dim E = degree.
double klain_value(const ValuationCoeffs& mu, const Subspace& e);

struct Estimate {
  double value;
  double se;
  double quad_tol = 0.0;
};

/// vol_k(K_j | E_s) for common orbit samples E_s (rows) and bodies K_j (columns).
Eigen::MatrixXd grassmannian_samples(int n, int k, double cos2theta, const std::vector<BodyPtr>& bodies,
                                     int samples, std::uint64_t seed, Exec exec = Exec::parallel);

/// Mean and standard error of sum_j w_j column_j.
Estimate combine_samples(const Eigen::MatrixXd& samples, const Eigen::VectorXd& weights);

/// int over Grass_k(theta) of vol_k(K|E) dE, k = 2 (phi) or 3 (psi).
Estimate eval_grassmannian(Family family, double cos2theta, const ConvexBody& body, int samples,
                           std::uint64_t seed, Exec exec = Exec::parallel);

/// sum_j w_j mu(K_j) for any valuation, by orbit sampling. Raw coefficients
/// are expanded over the families at cos^2 = 0 and 1 (Klain functions are
/// linear in cos^2, so two orbits determine the valuation).
Estimate grassmannian_linear(const UnitaryValuation& mu, const std::vector<BodyPtr>& bodies,
                             const Eigen::VectorXd& weights, int samples, std::uint64_t seed,
                             Exec exec = Exec::parallel);

using Slot = std::variant<SphereFunctionPtr, BodyPtr>;

enum class MixedRoute { operator_route, minkowski_route };

struct MixedOptions {
  MixedRoute route = MixedRoute::operator_route;
  int samples = 20000;
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel;
};

/// mu(slot_1, ..., slot_k). Operator route: (1/k) int h_1 D_mu(h_2, ..) du,
/// the first slot may be any function. Minkowski route: inclusion-exclusion
/// of mu over Minkowski sums, diagonal values by orbit sampling with common
/// random numbers.
Estimate eval_mixed(const UnitaryValuation& mu, const std::vector<Slot>& slots, const SphereGrid& grid,
                    const MixedOptions& opt = {});

/// Average of h(v) + h(-v) over the sphere (probability measure).
Estimate mean_width(const ConvexBody& body, const SphereGrid& grid, Exec exec = Exec::parallel);

}  // namespace afval
