#pragma once

#include <cstdint>
#include <random>

namespace sibm {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Derives statistically independent stream seeds from
// (master seed, stream index) so that trial k's stream does not depend on
// how many draws earlier trials consumed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream = 0) {
  return Rng(mix_seed(master, stream));
}

}  // namespace sibm
