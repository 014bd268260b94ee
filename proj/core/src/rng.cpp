#include "graphrec/rng.hpp"

#include <cmath>

namespace graphrec {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ substream);
}

double laplace(Rng& rng, double scale) {
  if (scale <= 0.0) return 0.0;
  // u in (-0.5, 0.5); reject the endpoint that would give log(0)
  double u = 0.0;
  do {
    u = uniform01(rng) - 0.5;
  } while (u == -0.5);
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

}  // namespace graphrec
