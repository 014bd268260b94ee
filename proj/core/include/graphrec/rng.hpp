#pragma once

#include <cstdint>
#include <random>

namespace graphrec {

using Rng = std::mt19937_64;

/// Mixes a base seed with stream identifiers into an independent seed
/// (SplitMix64 finalizer chained over the inputs).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0) {
  return Rng(derive_seed(seed, stream, substream));
}

/// Uniform integer in [0, n). n must be > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Uniform real in [0, 1).
inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Zero-mean Laplace draw with the given scale (inverse-CDF method).
double laplace(Rng& rng, double scale);

}  // namespace graphrec
