#include "afval/exec.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace afval {

int worker_count() {
  int threads = omp_get_max_threads();
  if (const char* cap = std::getenv("AFVAL_THREADS")) {
    try {
      const int c = std::stoi(cap);
      if (c >= 1) threads = std::min(threads, c);
    } catch (const std::exception&) {
      // ignore unparsable caps
    }
  }
  return std::max(threads, 1);
}

double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kLeaf = 64;
  if (v.size() <= kLeaf) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

GridIntegrals integrate_columns(const SphereGrid& grid, const Eigen::MatrixXd& values) {
  const auto count = values.rows();
  const auto m = values.cols();
  GridIntegrals r;
  r.value.resize(m);
  r.cov = Eigen::MatrixXd::Zero(m, m);
  std::vector<double> buf(static_cast<std::size_t>(count));
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index i = 0; i < count; ++i) buf[i] = grid.weights[i] * values(i, c);
    r.value[c] = pairwise_sum(buf);
  }
  if (!grid.paired()) return r;

  // unit p contributes Y_p = w (F(u_p) + F(-u_p)); the estimate is sum_p Y_p
  const Eigen::Index units = count / 2;
  Eigen::MatrixXd y(units, m);
  for (Eigen::Index p = 0; p < units; ++p)
    for (Eigen::Index c = 0; c < m; ++c)
      y(p, c) = grid.weights[2 * p] * values(2 * p, c) + grid.weights[2 * p + 1] * values(2 * p + 1, c);
  if (units < 2) return r;
  const Eigen::RowVectorXd mean = y.colwise().mean();
  const Eigen::MatrixXd centered = y.rowwise() - mean;
  // Var(sum) = units * Var(Y)
  r.cov = (centered.transpose() * centered) * (double(units) / double(units - 1));
  return r;
}

}  // namespace afval
