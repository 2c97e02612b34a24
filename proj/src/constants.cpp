#include "afval/constants.hpp"

#include <cmath>

#include "afval/error.hpp"

namespace afval {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::unsupported_dimension: return "unsupported dimension";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::not_positive_definite: return "not positive definite";
    case ErrorKind::unsupported_smoothness: return "unsupported smoothness";
    case ErrorKind::degenerate_frame: return "degenerate frame";
    case ErrorKind::schema: return "schema violation";
    case ErrorKind::outside_cone: return "outside cone";
    case ErrorKind::invalid_argument: return "invalid argument";
  }
  return "error";
}

double gamma_half_plus_one(int k) {
  if (k < 0) throw Error(ErrorKind::out_of_range, "gamma_half_plus_one needs k >= 0");
  // Gamma(1) = 1, Gamma(3/2) = sqrt(pi)/2, Gamma(x+1) = x Gamma(x)
  double g = (k % 2 == 0) ? 1.0 : 0.5 * std::sqrt(pi);
  for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) g *= 0.5 * j;
  return g;
}

double unit_ball_volume(int k) {
  return std::pow(pi, 0.5 * k) / gamma_half_plus_one(k);
}

double sphere_area(int n) { return 2.0 * n * unit_ball_volume(2 * n); }

std::uint64_t factorial(int m) {
  if (m < 0) throw Error(ErrorKind::out_of_range, "factorial of negative integer");
  std::uint64_t r = 1;
  for (int j = 2; j <= m; ++j) r *= static_cast<std::uint64_t>(j);
  return r;
}

std::uint64_t double_factorial(int m) {
  if (m < -1) throw Error(ErrorKind::out_of_range, "double factorial below -1");
  std::uint64_t r = 1;
  for (int j = m; j > 1; j -= 2) r *= static_cast<std::uint64_t>(j);
  return r;
}

}  // namespace afval
