#pragma once

#include <cstdint>
#include <random>

namespace ssrom {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; decorrelates nearby integer seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for an independent stream identified by (seed, stream, substream).
// Ensemble draw i uses derive_seed(seed, i, attempt).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0) noexcept;

Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0);

// Inverse CDF of Beta(1/2, 1/2), the arcsine law: F^{-1}(u) = sin^2(pi u / 2).
double arcsine_inverse_cdf(double u);

}  // namespace ssrom
