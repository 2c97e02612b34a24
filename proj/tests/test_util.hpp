#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "afval/rng.hpp"

namespace testutil {

inline Eigen::VectorXd random_unit(int dim, afval::Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v / v.norm();
}

inline Eigen::MatrixXd random_spd(int dim, afval::Rng& rng, double shift = 0.1) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
  Eigen::MatrixXd a = m * m.transpose() / dim + shift * Eigen::MatrixXd::Identity(dim, dim);
  return (0.5 * (a + a.transpose())).eval();
}

inline Eigen::MatrixXd random_sym(int dim, afval::Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
  return (0.5 * (m + m.transpose())).eval();
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Central-difference Hessian of a scalar function of R^d.
template <class F>
Eigen::MatrixXd fd_hessian(F&& f, const Eigen::VectorXd& x, double h) {
  const auto d = x.size();
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i; j < d; ++j) {
      Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
      pp[i] += h; pp[j] += h;
      pm[i] += h; pm[j] -= h;
      mp[i] -= h; mp[j] += h;
      mm[i] -= h; mm[j] -= h;
      out(i, j) = out(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
    }
  return out;
}

}  // namespace testutil
