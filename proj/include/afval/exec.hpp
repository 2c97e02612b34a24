#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "afval/sphere_grid.hpp"

namespace afval {

/// Serial is the reference; parallel fills the same per-node buffer with
/// OpenMP and reduces in the same fixed order, so results are bit-identical.
enum class Exec { serial, parallel };

/// Worker count for parallel sweeps: OpenMP maximum, capped by AFVAL_THREADS.
int worker_count();

/// Pairwise (cascade) summation in a fixed tree order.
double pairwise_sum(std::span<const double> v);

/// values(i, c) = f(node i)[c] for a vector-valued node kernel; `f` must be
/// thread-safe and write `columns` entries into its output span.
template <class F>
Eigen::MatrixXd map_nodes(const SphereGrid& grid, int columns, F&& f, Exec exec) {
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
  Eigen::MatrixXd out(count, columns);
  auto body = [&](std::ptrdiff_t i, std::vector<double>& buf) {
    const Eigen::VectorXd u = grid.nodes.col(i);
    f(u, std::span<double>(buf));
    for (int c = 0; c < columns; ++c) out(i, c) = buf[static_cast<std::size_t>(c)];
  };
  if (exec == Exec::serial) {
    std::vector<double> buf(static_cast<std::size_t>(columns));
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i, buf);
    return out;
  }
  const int threads = worker_count();
#pragma omp parallel num_threads(threads)
  {
    std::vector<double> buf(static_cast<std::size_t>(columns));
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i, buf);
  }
  return out;
}

/// Weighted integrals of several node-value columns on one grid, with the
/// covariance of the estimates (zero for product grids; antithetic pairs are
/// the sampling unit for Monte Carlo grids).
struct GridIntegrals {
  Eigen::VectorXd value;
  Eigen::MatrixXd cov;

  double se(int i) const { return std::sqrt(std::max(cov(i, i), 0.0)); }
  /// Standard error of g(values) by the delta method.
  double delta_se(const Eigen::VectorXd& grad) const {
    return std::sqrt(std::max(grad.dot(cov * grad), 0.0));
  }
};

GridIntegrals integrate_columns(const SphereGrid& grid, const Eigen::MatrixXd& values);

}  // namespace afval
