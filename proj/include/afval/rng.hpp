#pragma once

#include <cstdint>
#include <random>

namespace afval {

// splitmix64 finalizer
constexpr std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for stream `index` under `root`. Independent of thread scheduling.
constexpr std::uint64_t split_seed(std::uint64_t root, std::uint64_t index) {
  return mix_seed(mix_seed(root) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t root, std::uint64_t index) {
  return Rng(split_seed(root, index));
}

}  // namespace afval
