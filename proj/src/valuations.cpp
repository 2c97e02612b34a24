#include "afval/valuations.hpp"

#include <cmath>

#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/rng.hpp"

namespace afval {

std::string to_string(Family f) {
  switch (f) {
    case Family::phi:
      return "phi";
    case Family::psi:
      return "psi";
    default:
      return "raw";
  }
}

Family parse_family(const std::string& s) {
  if (s == "phi") return Family::phi;
  if (s == "psi") return Family::psi;
  if (s == "raw") return Family::raw;
  throw Error(ErrorKind::invalid_argument, "unknown family '" + s + "' (phi | psi | raw)");
}

namespace {

void check_cos2(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorKind::out_of_range, "cos^2 theta must lie in [0,1]");
}

}  // namespace

ValuationCoeffs phi_coeffs(double u, int n) {
  check_cos2(u);
  if (n < 2) throw Error(ErrorKind::unsupported_dimension, "phi_theta needs n >= 2");
  return {2, (2.0 * n - 1.0 - u) / (4.0 * n * (n - 1.0)), (1.0 + u) / (2.0 * n), n};
}

ValuationCoeffs psi_coeffs(double u, int n) {
  check_cos2(u);
  if (n < 3) throw Error(ErrorKind::unsupported_dimension, "psi_theta needs n >= 3");
  const double pre = std::ldexp(double(factorial(static_cast<unsigned>(n - 3))), n - 2) /
                     (n * pi * double(double_factorial(static_cast<unsigned>(2 * n - 3))));
  return {3, pre * (2.0 * n - 3.0 - u), pre * 2.0 * (n - 2) * (1.0 + u / 3.0), n};
}

UnitaryValuation UnitaryValuation::phi(double cos2theta, int n) {
  return {phi_coeffs(cos2theta, n), Family::phi, cos2theta};
}

UnitaryValuation UnitaryValuation::psi(double cos2theta, int n) {
  return {psi_coeffs(cos2theta, n), Family::psi, cos2theta};
}

UnitaryValuation UnitaryValuation::raw(int degree, double c0, double c1, int n) {
  ValuationCoeffs c{degree, c0, c1, n};
  c.validate();
  return {c, Family::raw, 0.0};
}

double klain_value(const ValuationCoeffs& mu, const Subspace& e) {
  mu.validate();
  if (e.k() != mu.degree) throw Error(ErrorKind::dimension_mismatch, "Klain function needs dim E = degree");
  const double c2 = kahler_angle_sq(e);
  return mu.c0 * (1.0 - c2) + mu.c1 * c2;
}

Eigen::MatrixXd grassmannian_samples(int n, int k, double cos2theta, const std::vector<BodyPtr>& bodies,
                                     int samples, std::uint64_t seed, Exec exec) {
  if (samples < 2) throw Error(ErrorKind::out_of_range, "need at least two orbit samples");
  for (const auto& b : bodies)
    if (!b || b->n() != n) throw Error(ErrorKind::dimension_mismatch, "body dimension differs from n");
  const auto cols = static_cast<Eigen::Index>(bodies.size());
  Eigen::MatrixXd out(samples, cols);
  auto row = [&](int s) {
    const Subspace e = sample_orbit(n, k, cos2theta, split_seed(seed, static_cast<std::uint64_t>(s)));
    for (Eigen::Index j = 0; j < cols; ++j) out(s, j) = proj_volume(*bodies[static_cast<std::size_t>(j)], e);
  };
  if (exec == Exec::serial) {
    for (int s = 0; s < samples; ++s) row(s);
  } else {
    const int threads = worker_count();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int s = 0; s < samples; ++s) row(s);
  }
  return out;
}

Estimate combine_samples(const Eigen::MatrixXd& samples, const Eigen::VectorXd& weights) {
  const Eigen::VectorXd y = samples * weights;
  const auto count = y.size();
  std::vector<double> buf(y.data(), y.data() + count);
  const double mean = pairwise_sum(buf) / double(count);
  for (auto& v : buf) v = (v - mean) * (v - mean);
  const double var = pairwise_sum(buf) / double(count - 1);
  return {mean, std::sqrt(var / double(count)), 0.0};
}

Estimate eval_grassmannian(Family family, double cos2theta, const ConvexBody& body, int samples,
                           std::uint64_t seed, Exec exec) {
  check_cos2(cos2theta);
  if (family == Family::raw) throw Error(ErrorKind::invalid_argument, "orbit integrals need phi or psi");
  const int k = family == Family::phi ? 2 : 3;
  if (body.n() < k) throw Error(ErrorKind::unsupported_dimension, "psi needs n >= 3");
  const auto x = grassmannian_samples(body.n(), k, cos2theta, {std::make_shared<const ConvexBody>(body)},
                                      samples, seed, exec);
  return combine_samples(x, Eigen::VectorXd::Ones(1));
}

Estimate grassmannian_linear(const UnitaryValuation& mu, const std::vector<BodyPtr>& bodies,
                             const Eigen::VectorXd& weights, int samples, std::uint64_t seed, Exec exec) {
  mu.coeffs.validate();
  const int n = mu.n(), k = mu.degree();
  if (mu.family != Family::raw) {
    const auto x = grassmannian_samples(n, k, mu.cos2theta, bodies, samples, seed, exec);
    return combine_samples(x, weights);
  }
  // raw = w0 * family(0) + w1 * family(1)
  const auto at = [&](double u) { return k == 2 ? phi_coeffs(u, n) : psi_coeffs(u, n); };
  const ValuationCoeffs f0 = at(0.0), f1 = at(1.0);
  Eigen::Matrix2d m;
  m << f0.c0, f0.c1, f1.c0, f1.c1;
  const Eigen::RowVector2d w = Eigen::RowVector2d(mu.coeffs.c0, mu.coeffs.c1) * m.inverse();
  Estimate total{0.0, 0.0, 0.0};
  double var = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (w[i] == 0.0) continue;
    const auto x = grassmannian_samples(n, k, double(i), bodies, samples, split_seed(seed, 1000 + i), exec);
    const auto e = combine_samples(x, weights);
    total.value += w[i] * e.value;
    var += w[i] * w[i] * e.se * e.se;
  }
  total.se = std::sqrt(var);
  return total;
}

namespace {

SphereFunctionPtr as_function(const Slot& s) {
  if (const auto* f = std::get_if<SphereFunctionPtr>(&s)) return *f;
  return support_function(std::get<BodyPtr>(s));
}

}  // namespace

Estimate eval_mixed(const UnitaryValuation& mu, const std::vector<Slot>& slots, const SphereGrid& grid,
                    const MixedOptions& opt) {
  mu.coeffs.validate();
  const int k = mu.degree();
  if (static_cast<int>(slots.size()) != k) throw Error(ErrorKind::invalid_argument, "need one slot per degree");

  if (opt.route == MixedRoute::operator_route) {
    std::vector<SphereFunctionPtr> fs;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto f = as_function(slots[i]);
      if (i > 0 && !f->smooth())
        throw Error(ErrorKind::unsupported_smoothness, "operator route needs smooth bodies beyond the first slot");
      fs.push_back(std::move(f));
    }
    const auto r = valuation_operator_route(mu.coeffs, fs, grid, opt.exec);
    return {r.value, r.se, r.quad_tol};
  }

  std::vector<BodyPtr> b;
  for (const auto& s : slots) {
    const auto* p = std::get_if<BodyPtr>(&s);
    if (!p) throw Error(ErrorKind::invalid_argument, "Minkowski route needs bodies in every slot");
    b.push_back(*p);
  }
  std::vector<BodyPtr> sums;
  Eigen::VectorXd w;
  if (k == 2) {
    sums = {minkowski({{1.0, b[0]}, {1.0, b[1]}}), b[0], b[1]};
    w = Eigen::Vector3d(0.5, -0.5, -0.5);
  } else {
    sums = {minkowski({{1.0, b[0]}, {1.0, b[1]}, {1.0, b[2]}}),
            minkowski({{1.0, b[0]}, {1.0, b[1]}}),
            minkowski({{1.0, b[0]}, {1.0, b[2]}}),
            minkowski({{1.0, b[1]}, {1.0, b[2]}}),
            b[0],
            b[1],
            b[2]};
    w.resize(7);
    w << 1, -1, -1, -1, 1, 1, 1;
    w /= 6.0;
  }
  return grassmannian_linear(mu, sums, w, opt.samples, opt.seed, opt.exec);
}

Estimate mean_width(const ConvexBody& body, const SphereGrid& grid, Exec exec) {
  if (grid.n != body.n()) throw Error(ErrorKind::dimension_mismatch, "grid and body differ in n");
  auto kernel = [&](const Eigen::VectorXd& u, std::span<double> out) {
    out[0] = body.support(u) + body.support(-u);
  };
  const auto r = integrate_columns(grid, map_nodes(grid, 1, kernel, exec));
  const double area = sphere_area(grid.n);
  return {r.value[0] / area, r.se(0) / area, quadrature_tolerance(grid) / area};
}

}  // namespace afval
