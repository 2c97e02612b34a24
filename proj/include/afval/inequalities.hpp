#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "afval/valuations.hpp"

namespace afval {

enum class Verdict { holds, violated, inconclusive };
std::string to_string(Verdict v);

/// Inequalities pass unless violated; identities pass only inside the band.
enum class CheckKind { inequality, identity };

struct InequalityReport {
  std::string name;
  nlohmann::ordered_json params;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  ///< lhs - rhs
  double se = 0.0;   ///< standard error of the gap
  double tolerance = 0.0;
  Verdict verdict = Verdict::inconclusive;
  CheckKind kind = CheckKind::inequality;
  double runtime = 0.0;  ///< seconds; kept out of reproducible output
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool passed() const;
};

/// Tolerance band 3 se + quad + a rounding floor relative to |lhs| + |rhs|;
/// verdict inconclusive inside it.
InequalityReport make_report(std::string name, CheckKind kind, double lhs, double rhs, double se, double quad);

/// Throws outside_cone naming every failed closed-cone condition.
void require_cone(const ValuationCoeffs& mu);

/// mu(f, L[, M])^2 >= mu(f, f[, M]) mu(L, L[, M]). Slot 0 is f (any C^2
/// function or smooth body), the rest smooth bodies or functions.
InequalityReport af_check(const UnitaryValuation& mu, const std::vector<Slot>& slots, const SphereGrid& grid,
                          Exec exec = Exec::parallel);

/// Gap mu(K,B)^2 - mu(K,K) mu(B,B) for phi_theta, K the ball perturbed by
/// eps Re(z1 conj z2); no regime check.
struct CounterexampleGap {
  double lhs, rhs, gap, se, quad;
  double prediction;  ///< -eps^2 mu(B) lambda_{1,1} |f|^2 / 2
  double certificate_min_eigenvalue;
};
CounterexampleGap counterexample_gap(int n, double cos2theta, double eps, const SphereGrid& grid,
                                     Exec exec = Exec::parallel);

/// Requires cos2theta >= (n+1)/(2n); verdict violated above the threshold.
InequalityReport counterexample_run(int n, double cos2theta, double eps, const SphereGrid& grid,
                                    Exec exec = Exec::parallel);

struct ThresholdBracket {
  double lo, hi;  ///< gap > 0 at lo, gap < 0 at hi
  int evaluations;
};
/// Bisection on the sign of counterexample_gap in cos^2 theta.
ThresholdBracket threshold_bracket(int n, double eps, double lo, double hi, double width, const SphereGrid& grid,
                                   Exec exec = Exec::parallel);

/// mu(K0 + K1 [m], K_{m+1}..)^{1/m} >= mu(K0 [m], ..)^{1/m} + mu(K1 [m], ..)^{1/m}.
InequalityReport bm_check(const UnitaryValuation& mu, int m, const std::vector<BodyPtr>& bodies,
                          const SphereGrid& grid, Exec exec = Exec::parallel);

/// Two inequalities on orbit integrals:
///   (int_{Grass_1} vol_1)^2 >= (4/pi) phi_theta(K),
///   phi_{theta'}(K)^3 >= (9 pi / 16) psi_theta(K)^2 with 3 cos^2 theta' = cos^2 theta (n >= 3).
/// The mean width is integrated on `grid`, orbit integrals by sampling.
std::vector<InequalityReport> iso_check(double cos2theta, const BodyPtr& body, int samples, std::uint64_t seed,
                                        const SphereGrid& grid, Exec exec = Exec::parallel);

/// Identity psi_theta(K, K, B) = (4/3) phi_{theta'}(K).
InequalityReport mu_der_check(double cos2theta, const BodyPtr& body, const SphereGrid& grid,
                              Exec exec = Exec::parallel);

/// mu(K,B,B)^3 >= mu(B)^2 mu(K) and mu(K,K,B)^3 >= mu(B) mu(K)^2 (degree 3).
std::vector<InequalityReport> muquer_check(const UnitaryValuation& mu, const BodyPtr& body, const SphereGrid& grid,
                                           Exec exec = Exec::parallel);

struct GardingSweep {
  int cases = 0;
  double min_relative_gap = 0.0;  ///< min gap / scale
  int negative = 0;               ///< gap < -1e-10 scale
  int equality_hits = 0;
  int equality_mismatches = 0;  ///< detector disagrees with X = lambda A
};
/// Random A > 0 and symmetric X; X = lambda A for every tenth case.
GardingSweep garding_sweep(const ValuationCoeffs& mu, int cases, std::uint64_t seed);

/// |P_{1,1} f|^2 / |f|^2 with P_{1,1} the L^2 projection onto traceless
/// Hermitian quadratics, from a least-squares fit on the grid.
double h11_fraction(const SphereFunction& f, const SphereGrid& grid, Exec exec = Exec::parallel);

}  // namespace afval
