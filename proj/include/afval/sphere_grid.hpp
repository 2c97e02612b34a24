#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace afval {

/// Gauss rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta (Golub-Welsch).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_jacobi(int m, double alpha, double beta);
GaussRule gauss_legendre(int m);
/// Rule on [0, 1] for the weight t^a.
GaussRule gauss_jacobi_unit(int m, double a);

enum class GridMethod { product, monte_carlo };

/// Quadrature on S^{2n-1}; weights sum to the sphere area 2n omega_{2n}.
/// Monte Carlo grids store antithetic pairs (u, -u) in consecutive columns.
struct SphereGrid {
  int n = 0;
  GridMethod method = GridMethod::product;
  int resolution = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd nodes;  // 2n x N
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  bool paired() const { return method == GridMethod::monte_carlo; }
  Eigen::VectorXd node(std::size_t i) const { return nodes.col(static_cast<Eigen::Index>(i)); }
};

/// product: resolution^{2n-1} nodes (recursive Hopf coordinates, Gauss-Jacobi
/// in t = |w|^2 and trapezoid in the phases). monte_carlo: `resolution`
/// samples (rounded up to even).
SphereGrid build_grid(int n, GridMethod method, int resolution, std::uint64_t seed = 0);
/// Defaults: n = 2 product 64; n >= 3 Monte Carlo with 2e5 samples.
SphereGrid default_grid(int n, std::uint64_t seed);

std::string to_string(GridMethod m);
GridMethod parse_grid_method(const std::string& s);

/// Gauss-Legendre x trapezoid grid on S^2 (weights sum to 4 pi).
struct Sphere2Grid {
  std::vector<Eigen::Vector3d> nodes;
  std::vector<Eigen::Matrix<double, 3, 2>> tangents;
  std::vector<double> weights;
};
/// coarse: 24 x 48 nodes, fine: 64 x 128.
enum class Sphere2Resolution { coarse, fine };
const Sphere2Grid& sphere2_grid(Sphere2Resolution r = Sphere2Resolution::coarse);

}  // namespace afval
