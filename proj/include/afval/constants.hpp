#pragma once

#include <cstdint>
#include <numbers>

namespace afval {

inline constexpr double pi = std::numbers::pi;

/// Gamma(k/2 + 1) for integer k >= 0, by exact recursion on half-integers.
double gamma_half_plus_one(int k);

/// Volume of the k-dimensional Euclidean unit ball, pi^{k/2} / Gamma(k/2 + 1).
double unit_ball_volume(int k);

/// Surface measure of the unit sphere S^{2n-1} in C^n, i.e. 2n * omega_{2n}.
double sphere_area(int n);

std::uint64_t factorial(int m);
/// m!! for odd or even m >= -1 (with (-1)!! = 0!! = 1).
std::uint64_t double_factorial(int m);

}  // namespace afval
