#include "afval/sphere_grid.hpp"

#include <cmath>
#include <random>

#include "afval/constants.hpp"
#include "afval/error.hpp"
#include "afval/rng.hpp"

namespace afval {

GaussRule gauss_jacobi(int m, double alpha, double beta) {
  if (m < 1) throw Error(ErrorKind::out_of_range, "Gauss rule needs at least one node");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k >= 1) {
      const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      const double den = s * s * (s + 1.0) * (s - 1.0);
      off[k - 1] = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                     std::tgamma(ab + 2.0);
  GaussRule r;
  for (int k = 0; k < m; ++k) {
    r.nodes.push_back(es.eigenvalues()[k]);
    const double v = es.eigenvectors()(0, k);
    r.weights.push_back(mu0 * v * v);
  }
  return r;
}

GaussRule gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

GaussRule gauss_jacobi_unit(int m, double a) {
  GaussRule r = gauss_jacobi(m, 0.0, a);
  const double f = std::pow(2.0, a + 1.0);
  for (int k = 0; k < m; ++k) {
    r.nodes[k] = 0.5 * (1.0 + r.nodes[k]);
    r.weights[k] /= f;
  }
  return r;
}

namespace {

// Nodes/weights on S^{2m-1}: u = (sqrt(1-t) e^{ia}, sqrt(t) w), w on S^{2m-3},
// du = 1/2 t^{m-2} dt da dw.
void product_grid(int m, int r, std::vector<Eigen::VectorXd>& nodes, std::vector<double>& weights) {
  if (m == 1) {
    for (int j = 0; j < r; ++j) {
      const double b = 2.0 * pi * j / r;
      Eigen::VectorXd v(2);
      v << std::cos(b), std::sin(b);
      nodes.push_back(v);
      weights.push_back(2.0 * pi / r);
    }
    return;
  }
  std::vector<Eigen::VectorXd> sub;
  std::vector<double> subw;
  product_grid(m - 1, r, sub, subw);
  const GaussRule g = gauss_jacobi_unit(r, m - 2.0);
  for (int i = 0; i < r; ++i) {
    const double t = g.nodes[i];
    const double c = std::sqrt(1.0 - t), s = std::sqrt(t);
    for (int j = 0; j < r; ++j) {
      const double a = 2.0 * pi * j / r;
      for (std::size_t q = 0; q < sub.size(); ++q) {
        Eigen::VectorXd v(2 * m);
        v[0] = c * std::cos(a);
        v[1] = c * std::sin(a);
        v.tail(2 * m - 2) = s * sub[q];
        nodes.push_back(std::move(v));
        weights.push_back(0.5 * g.weights[i] * (2.0 * pi / r) * subw[q]);
      }
    }
  }
}

}  // namespace

SphereGrid build_grid(int n, GridMethod method, int resolution, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::unsupported_dimension, "sphere grids need n >= 2");
  if (resolution < 10) throw Error(ErrorKind::out_of_range, "grid resolution must be >= 10");
  SphereGrid g;
  g.n = n;
  g.method = method;
  g.resolution = resolution;
  g.seed = seed;
  const int dim = 2 * n;
  if (method == GridMethod::product) {
    const double count = std::pow(double(resolution), 2 * n - 1);
    if (count > 5e7) throw Error(ErrorKind::out_of_range, "product grid too large; lower resolution");
    std::vector<Eigen::VectorXd> nodes;
    product_grid(n, resolution, nodes, g.weights);
    g.nodes.resize(dim, static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) g.nodes.col(static_cast<Eigen::Index>(i)) = nodes[i];
    return g;
  }
  const int pairs = (resolution + 1) / 2;
  g.nodes.resize(dim, 2 * pairs);
  Rng rng(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int p = 0; p < pairs; ++p) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
    v.normalize();
    g.nodes.col(2 * p) = v;
    g.nodes.col(2 * p + 1) = -v;
  }
  g.weights.assign(static_cast<std::size_t>(2 * pairs), sphere_area(n) / (2.0 * pairs));
  return g;
}

SphereGrid default_grid(int n, std::uint64_t seed) {
  if (n == 2) return build_grid(2, GridMethod::product, 64, seed);
  return build_grid(n, GridMethod::monte_carlo, 200000, seed);
}

std::string to_string(GridMethod m) { return m == GridMethod::product ? "product" : "monte-carlo"; }

GridMethod parse_grid_method(const std::string& s) {
  if (s == "product") return GridMethod::product;
  if (s == "monte-carlo" || s == "mc") return GridMethod::monte_carlo;
  throw Error(ErrorKind::invalid_argument, "unknown grid method '" + s + "'");
}

namespace {

Sphere2Grid make_sphere2_grid(int polar) {
  const int azimuth = 2 * polar;
  Sphere2Grid g;
  const GaussRule gl = gauss_legendre(polar);
  for (int i = 0; i < polar; ++i) {
    const double z = gl.nodes[i], s = std::sqrt(1.0 - z * z);
    for (int j = 0; j < azimuth; ++j) {
      const double ph = 2.0 * pi * (j + 0.5) / azimuth;
      const Eigen::Vector3d w(s * std::cos(ph), s * std::sin(ph), z);
      Eigen::Matrix<double, 3, 2> t;
      t.col(0) = Eigen::Vector3d(-std::sin(ph), std::cos(ph), 0.0);
      t.col(1) = w.cross(t.col(0).eval());
      g.nodes.push_back(w);
      g.tangents.push_back(t);
      g.weights.push_back(gl.weights[i] * 2.0 * pi / azimuth);
    }
  }
  return g;
}

}  // namespace

const Sphere2Grid& sphere2_grid(Sphere2Resolution r) {
  static const Sphere2Grid coarse = make_sphere2_grid(24);
  static const Sphere2Grid fine = make_sphere2_grid(64);
  return r == Sphere2Resolution::coarse ? coarse : fine;
}

}  // namespace afval
