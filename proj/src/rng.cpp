#include "ssrom/rng.hpp"

#include <cmath>
#include <numbers>

namespace ssrom {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) ^ (substream * 0xd1b54a32d192ed03ULL));
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  return Rng(derive_seed(seed, stream, substream));
}

double arcsine_inverse_cdf(double u) {
  const double s = std::sin(0.5 * std::numbers::pi * u);
  return s * s;
}

}  // namespace ssrom
