#include "afval/inequalities.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/harmonics.hpp"
#include "afval/rng.hpp"

namespace afval {

using ojson = nlohmann::ordered_json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    default:
      return "inconclusive";
  }
}

bool InequalityReport::passed() const { return verdict != Verdict::violated; }

InequalityReport make_report(std::string name, CheckKind kind, double lhs, double rhs, double se, double quad) {
  InequalityReport r;
  r.name = std::move(name);
  r.kind = kind;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.se = se;
  r.tolerance = 3.0 * se + quad + 1e-12 * (std::abs(lhs) + std::abs(rhs));
  const bool inside = std::abs(r.gap) <= r.tolerance;
  if (kind == CheckKind::identity) r.verdict = inside ? Verdict::holds : Verdict::violated;
  else if (inside) r.verdict = Verdict::inconclusive;
  else r.verdict = r.gap > 0.0 ? Verdict::holds : Verdict::violated;
  return r;
}

void require_cone(const ValuationCoeffs& mu) {
  const auto rc = in_hyperbolicity_range(mu);
  if (rc.closed) return;
  std::string msg = "valuation outside the closed cone:";
  for (const auto& v : rc.violated) msg += " fails " + v + ";";
  msg.pop_back();
  throw Error(ErrorKind::outside_cone, msg);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ojson mu_json(const UnitaryValuation& mu) {
  ojson j;
  j["degree"] = mu.degree();
  j["n"] = mu.n();
  j["family"] = to_string(mu.family);
  if (mu.family != Family::raw) j["cos2theta"] = mu.cos2theta;
  j["c0"] = mu.coeffs.c0;
  j["c1"] = mu.coeffs.c1;
  return j;
}

ojson grid_json(const SphereGrid& g) {
  ojson j;
  j["method"] = to_string(g.method);
  j["resolution"] = g.resolution;
  j["nodes"] = g.size();
  if (g.method == GridMethod::monte_carlo) j["seed"] = g.seed;
  return j;
}

SphereFunctionPtr slot_function(const Slot& s) {
  if (const auto* f = std::get_if<SphereFunctionPtr>(&s)) return *f;
  return support_function(std::get<BodyPtr>(s));
}

std::string slot_name(const Slot& s) {
  if (const auto* b = std::get_if<BodyPtr>(&s)) return (*b)->type_name();
  return "function";
}

double l1(const Eigen::VectorXd& g) { return g.cwiseAbs().sum(); }

double binomial(int m, int c) { return double(factorial(m)) / double(factorial(c) * factorial(m - c)); }

}  // namespace

InequalityReport af_check(const UnitaryValuation& mu, const std::vector<Slot>& slots, const SphereGrid& grid,
                          Exec exec) {
  const auto t0 = Clock::now();
  mu.coeffs.validate();
  require_cone(mu.coeffs);
  const int k = mu.degree();
  if (static_cast<int>(slots.size()) != k) throw Error(ErrorKind::invalid_argument, "need one slot per degree");
  std::vector<SphereFunctionPtr> fs;
  for (const auto& s : slots) fs.push_back(slot_function(s));
  const std::vector<MixedTerm> terms = k == 2 ? std::vector<MixedTerm>{{0, 1}, {0, 0}, {1, 1}}
                                              : std::vector<MixedTerm>{{0, 1, 2}, {0, 0, 2}, {1, 1, 2}};
  const auto r = mixed_integrals(mu.coeffs, fs, terms, grid, exec);
  const double a = r.value[0], b = r.value[1], c = r.value[2];
  const Eigen::Vector3d grad(2.0 * a, -c, -b);
  auto rep = make_report("aleksandrov_fenchel", CheckKind::inequality, a * a, b * c, r.delta_se(grad),
                         quadrature_tolerance(grid) * l1(grad));
  rep.params["valuation"] = mu_json(mu);
  rep.params["grid"] = grid_json(grid);
  ojson names = ojson::array();
  for (const auto& s : slots) names.push_back(slot_name(s));
  rep.params["slots"] = names;
  rep.extra["mixed"] = {{"mu_fL", a}, {"mu_ff", b}, {"mu_LL", c}};
  rep.runtime = seconds_since(t0);
  return rep;
}

CounterexampleGap counterexample_gap(int n, double cos2theta, double eps, const SphereGrid& grid, Exec exec) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::out_of_range, "eps must be >= 0");
  const auto mu = phi_coeffs(cos2theta, n);
  const auto f = std::make_shared<const HermitianQuadratic>(HermitianQuadratic::re_z1_conj_z2(n));
  const auto k = make_body(ConvexBody::perturbed_ball(n, 1.0, {eps}, {f}));
  const auto b = make_body(ConvexBody::ball(n, 1.0));
  const auto r = mixed_integrals(mu, {support_function(k), support_function(b)}, {{0, 1}, {0, 0}, {1, 1}}, grid,
                                 exec);
  const double a = r.value[0], kk = r.value[1], ll = r.value[2];
  const Eigen::Vector3d grad(2.0 * a, -ll, -kk);

  const double mu_ball = 0.5 * sphere_area(n) * (2.0 * (n - 1) * mu.c0 + mu.c1) / unit_ball_volume(2 * n - 2);
  const double f_sq = sphere_area(n) / (2.0 * n * (n + 1.0));
  const double lambda = dmu_eigenvalue(mu, 1, 1);
  CounterexampleGap g{};
  g.lhs = a * a;
  g.rhs = kk * ll;
  g.gap = g.lhs - g.rhs;
  g.se = r.delta_se(grad);
  g.quad = quadrature_tolerance(grid) * l1(grad);
  g.prediction = -eps * eps * mu_ball * 0.5 * lambda * f_sq;
  g.certificate_min_eigenvalue = std::get<PerturbedBall>(k->shape()).certificate_min_eigenvalue;
  return g;
}

InequalityReport counterexample_run(int n, double cos2theta, double eps, const SphereGrid& grid, Exec exec) {
  const auto t0 = Clock::now();
  const double threshold = (n + 1.0) / (2.0 * n);
  if (cos2theta < threshold * (1.0 - 1e-12))
    throw Error(ErrorKind::out_of_range, "counterexample needs cos^2 theta >= (n+1)/(2n) = " +
                                             std::to_string(threshold));
  const auto g = counterexample_gap(n, cos2theta, eps, grid, exec);
  auto rep = make_report("counterexample", CheckKind::inequality, g.lhs, g.rhs, g.se, g.quad);
  rep.params["n"] = n;
  rep.params["cos2theta"] = cos2theta;
  rep.params["eps"] = eps;
  rep.params["valuation"] = mu_json(UnitaryValuation::phi(cos2theta, n));
  rep.params["grid"] = grid_json(grid);
  rep.params["bodies"] = {"ball perturbed by eps Re(z1 conj z2)", "unit ball"};
  rep.extra["threshold"] = threshold;
  rep.extra["prediction"] = g.prediction;
  rep.extra["certificate_min_eigenvalue"] = g.certificate_min_eigenvalue;
  const HermitianQuadratic f = HermitianQuadratic::re_z1_conj_z2(n);
  rep.extra["h11_fraction"] = h11_fraction(f, grid, exec);
  rep.runtime = seconds_since(t0);
  return rep;
}

ThresholdBracket threshold_bracket(int n, double eps, double lo, double hi, double width, const SphereGrid& grid,
                                   Exec exec) {
  if (!(lo < hi) || !(width > 0.0)) throw Error(ErrorKind::invalid_argument, "bracket needs lo < hi, width > 0");
  int evals = 2;
  const double glo = counterexample_gap(n, lo, eps, grid, exec).gap;
  const double ghi = counterexample_gap(n, hi, eps, grid, exec).gap;
  if (!(glo > 0.0 && ghi < 0.0)) throw Error(ErrorKind::invalid_argument, "gap does not change sign on [lo, hi]");
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double g = counterexample_gap(n, mid, eps, grid, exec).gap;
    ++evals;
    if (g > 0.0) lo = mid;
    else hi = mid;
  }
  return {lo, hi, evals};
}

InequalityReport bm_check(const UnitaryValuation& mu, int m, const std::vector<BodyPtr>& bodies,
                          const SphereGrid& grid, Exec exec) {
  const auto t0 = Clock::now();
  mu.coeffs.validate();
  require_cone(mu.coeffs);
  const int k = mu.degree();
  if (m < 2 || m > k) throw Error(ErrorKind::out_of_range, "m must lie in [2, degree]");
  if (static_cast<int>(bodies.size()) != 2 + k - m)
    throw Error(ErrorKind::invalid_argument, "need K0, K1 and degree - m further bodies");
  std::vector<SphereFunctionPtr> fs;
  for (const auto& b : bodies) fs.push_back(support_function(b));

  // T_c = mu(K0 [c], K1 [m - c], rest)
  std::vector<MixedTerm> terms;
  for (int c = 0; c <= m; ++c) {
    std::vector<int> idx(static_cast<std::size_t>(c), 0);
    idx.resize(static_cast<std::size_t>(m), 1);
    for (int j = 2; j < static_cast<int>(bodies.size()); ++j) idx.push_back(j);
    terms.push_back({idx[0], idx[1], k == 3 ? idx[2] : -1});
  }
  const auto r = mixed_integrals(mu.coeffs, fs, terms, grid, exec);
  double s = 0.0;
  for (int c = 0; c <= m; ++c) s += binomial(m, c) * r.value[c];
  const double inv = 1.0 / m;
  const double t0v = r.value[0], tm = r.value[m];
  const double lhs = std::pow(s, inv);
  const double rhs = std::pow(tm, inv) + std::pow(t0v, inv);
  Eigen::VectorXd grad(m + 1);
  for (int c = 0; c <= m; ++c) grad[c] = inv * std::pow(s, inv - 1.0) * binomial(m, c);
  grad[m] -= inv * std::pow(tm, inv - 1.0);
  grad[0] -= inv * std::pow(t0v, inv - 1.0);
  auto rep = make_report("brunn_minkowski", CheckKind::inequality, lhs, rhs, r.delta_se(grad),
                         quadrature_tolerance(grid) * l1(grad));
  rep.params["valuation"] = mu_json(mu);
  rep.params["m"] = m;
  rep.params["grid"] = grid_json(grid);
  ojson names = ojson::array();
  for (const auto& b : bodies) names.push_back(b->type_name());
  rep.params["bodies"] = names;
  rep.runtime = seconds_since(t0);
  return rep;
}

std::vector<InequalityReport> iso_check(double cos2theta, const BodyPtr& body, int samples, std::uint64_t seed,
                                        const SphereGrid& grid, Exec exec) {
  const int n = body->n();
  if (!(cos2theta >= 0.0 && cos2theta <= 1.0)) throw Error(ErrorKind::out_of_range, "cos^2 theta must lie in [0,1]");
  const double window2 = (n + 1.0) / (2.0 * n);
  const double window3 = 3.0 * (n + 1.0) / (5.0 * n - 1.0);
  const bool first = cos2theta <= window2 * (1.0 + 1e-12);
  const bool second = n >= 3 && cos2theta <= window3 * (1.0 + 1e-12);
  if (!first && !second)
    throw Error(ErrorKind::out_of_range, "cos^2 theta outside both windows: need <= (n+1)/(2n) or, for n >= 3, "
                                         "<= 3(n+1)/(5n-1)");
  std::vector<InequalityReport> out;
  ojson base;
  base["n"] = n;
  base["cos2theta"] = cos2theta;
  base["body"] = body->type_name();
  base["samples"] = samples;
  base["seed"] = seed;

  if (first) {
    const auto t0 = Clock::now();
    const auto w = mean_width(*body, grid, exec);
    const auto phi = eval_grassmannian(Family::phi, cos2theta, *body, samples, split_seed(seed, 1), exec);
    const double c = 4.0 / pi;
    const double se = std::hypot(2.0 * w.value * w.se, c * phi.se);
    auto rep = make_report("isoperimetric_width_phi", CheckKind::inequality, w.value * w.value, c * phi.value, se,
                           2.0 * std::abs(w.value) * w.quad_tol);
    rep.params = base;
    rep.params["grid"] = grid_json(grid);
    rep.extra["mean_width"] = w.value;
    rep.extra["phi"] = phi.value;
    rep.extra["constant"] = c;
    rep.extra["stated_range"] = cos2theta <= 0.5;
    rep.runtime = seconds_since(t0);
    out.push_back(std::move(rep));
  }
  if (second) {
    const auto t0 = Clock::now();
    const double u1 = cos2theta / 3.0;
    const auto phi = eval_grassmannian(Family::phi, u1, *body, samples, split_seed(seed, 2), exec);
    const auto psi = eval_grassmannian(Family::psi, cos2theta, *body, samples, split_seed(seed, 3), exec);
    const double c = 9.0 * pi / 16.0;
    const double se = std::hypot(3.0 * phi.value * phi.value * phi.se, 2.0 * c * psi.value * psi.se);
    auto rep = make_report("isoperimetric_phi_psi", CheckKind::inequality, std::pow(phi.value, 3),
                           c * psi.value * psi.value, se, 0.0);
    rep.params = base;
    rep.params["cos2theta_prime"] = u1;
    rep.extra["phi_prime"] = phi.value;
    rep.extra["psi"] = psi.value;
    rep.extra["constant"] = c;
    rep.runtime = seconds_since(t0);
    out.push_back(std::move(rep));
  }
  return out;
}

InequalityReport mu_der_check(double cos2theta, const BodyPtr& body, const SphereGrid& grid, Exec exec) {
  const auto t0 = Clock::now();
  const int n = body->n();
  const auto psi = psi_coeffs(cos2theta, n);
  const auto phi = phi_coeffs(cos2theta / 3.0, n);
  if (grid.n != n) throw Error(ErrorKind::dimension_mismatch, "grid and body differ in n");
  const auto hk = support_function(body);
  if (!hk->smooth()) throw Error(ErrorKind::unsupported_smoothness, "mu_der check needs a smooth body");
  const auto hb = support_function(make_body(ConvexBody::ball(n, 1.0)));

  auto kernel = [&](const Eigen::VectorXd& u, std::span<double> out) {
    const AdaptedFrame fr = adapted_frame(u);
    const Mat rk = restricted_hessian(*hk, fr);
    const Mat rb = restricted_hessian(*hb, fr);
    const double h = hk->value(u);
    out[0] = h * p_mu_polarized(psi, rk, rb) / 3.0;
    out[1] = (4.0 / 3.0) * 0.5 * h * p_mu(phi, rk);
  };
  const auto r = integrate_columns(grid, map_nodes(grid, 2, kernel, exec));
  const Eigen::Vector2d grad(1.0, -1.0);
  auto rep = make_report("mu_der", CheckKind::identity, r.value[0], r.value[1], r.delta_se(grad),
                         quadrature_tolerance(grid) * 2.0);
  rep.params["n"] = n;
  rep.params["cos2theta"] = cos2theta;
  rep.params["cos2theta_prime"] = cos2theta / 3.0;
  rep.params["body"] = body->type_name();
  rep.params["grid"] = grid_json(grid);
  rep.runtime = seconds_since(t0);
  return rep;
}

std::vector<InequalityReport> muquer_check(const UnitaryValuation& mu, const BodyPtr& body, const SphereGrid& grid,
                                           Exec exec) {
  const auto t0 = Clock::now();
  mu.coeffs.validate();
  if (mu.degree() != 3) throw Error(ErrorKind::invalid_argument, "quermassintegral check needs degree 3");
  require_cone(mu.coeffs);
  const int n = mu.n();
  const auto hb = support_function(make_body(ConvexBody::ball(n, 1.0)));
  // T_KBB, T_KKB, T_K, T_B
  const auto r = mixed_integrals(mu.coeffs, {support_function(body), hb}, {{0, 1, 1}, {0, 0, 1}, {0, 0, 0}, {1, 1, 1}},
                                 grid, exec);
  const double kbb = r.value[0], kkb = r.value[1], k = r.value[2], b = r.value[3];
  const double q = quadrature_tolerance(grid);
  Eigen::Vector4d g1(3.0 * kbb * kbb, 0.0, -b * b, -2.0 * b * k);
  Eigen::Vector4d g2(0.0, 3.0 * kkb * kkb, -2.0 * b * k, -k * k);
  std::vector<InequalityReport> out;
  out.push_back(make_report("quermass_KBB", CheckKind::inequality, std::pow(kbb, 3), b * b * k, r.delta_se(g1),
                            q * l1(g1)));
  out.push_back(make_report("quermass_KKB", CheckKind::inequality, std::pow(kkb, 3), b * k * k, r.delta_se(g2),
                            q * l1(g2)));
  const double secs = seconds_since(t0);
  for (auto& rep : out) {
    rep.params["valuation"] = mu_json(mu);
    rep.params["body"] = body->type_name();
    rep.params["grid"] = grid_json(grid);
    rep.extra["mixed"] = {{"mu_KBB", kbb}, {"mu_KKB", kkb}, {"mu_K", k}, {"mu_B", b}};
    rep.runtime = secs;
  }
  return out;
}

GardingSweep garding_sweep(const ValuationCoeffs& mu, int cases, std::uint64_t seed) {
  mu.validate();
  if (mu.degree != 3) throw Error(ErrorKind::invalid_argument, "Garding sweep needs degree 3");
  const int d = 2 * mu.n - 1;
  GardingSweep s;
  s.cases = cases;
  s.min_relative_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cases; ++i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(d, d), x(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g(r, c) = normal(rng);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) x(r, c) = normal(rng);
    Eigen::MatrixXd a = g * g.transpose() / d + 0.05 * Eigen::MatrixXd::Identity(d, d);
    a = 0.5 * (a + a.transpose()).eval();
    const bool proportional = i % 10 == 0;
    if (proportional) x = (0.5 + std::abs(normal(rng))) * a;
    else x = 0.5 * (x + x.transpose()).eval();
    const auto gap = garding_gap(mu, SymForm(mu.n, a), SymForm(mu.n, x));
    const double rel = gap.scale > 0.0 ? gap.gap / gap.scale : 0.0;
    s.min_relative_gap = std::min(s.min_relative_gap, rel);
    if (gap.gap < -1e-10 * gap.scale) ++s.negative;
    if (gap.equality) ++s.equality_hits;
    if (gap.equality != proportional) ++s.equality_mismatches;
  }
  return s;
}

double h11_fraction(const SphereFunction& f, const SphereGrid& grid, Exec exec) {
  const int n = grid.n;
  if (f.real_dim() != 2 * n) throw Error(ErrorKind::dimension_mismatch, "function lives on another sphere");
  const int m = n * n - 1;
  // basis: Re/Im z_i conj z_j (i < j), |z_i|^2 - |z_{i+1}|^2
  auto kernel = [&](const Eigen::VectorXd& u, std::span<double> out) {
    out[0] = f.value(u);
    int c = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        out[c++] = u[2 * i] * u[2 * j] + u[2 * i + 1] * u[2 * j + 1];
        out[c++] = u[2 * i + 1] * u[2 * j] - u[2 * i] * u[2 * j + 1];
      }
    for (int i = 0; i + 1 < n; ++i)
      out[c++] = u[2 * i] * u[2 * i] + u[2 * i + 1] * u[2 * i + 1] - u[2 * i + 2] * u[2 * i + 2] -
                 u[2 * i + 3] * u[2 * i + 3];
  };
  const Eigen::MatrixXd v = map_nodes(grid, m + 1, kernel, exec);
  const Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(), static_cast<Eigen::Index>(grid.weights.size()));
  const Eigen::MatrixXd gram = v.transpose() * w.asDiagonal() * v;
  const Eigen::MatrixXd basis_gram = gram.bottomRightCorner(m, m);
  const Eigen::VectorXd rhs = gram.col(0).tail(m);
  const double proj = rhs.dot(basis_gram.ldlt().solve(rhs));
  return gram(0, 0) > 0.0 ? proj / gram(0, 0) : 0.0;
}

}  // namespace afval
