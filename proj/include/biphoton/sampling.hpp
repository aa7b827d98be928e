#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "biphoton/table.hpp"

namespace biphoton {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic substream key so outcomes (and scan points) can be drawn
/// independently and in any order.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed2701ull));
}

inline double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

/// Poisson draw by counting unit-rate arrivals; exact for any mean without
/// underflow, O(mean) draws.
inline uint64_t sample_poisson(std::mt19937_64& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("sample_poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  uint64_t k = 0;
  double t = -std::log1p(-next_uniform(rng));
  while (t < mean) {
    ++k;
    t += -std::log1p(-next_uniform(rng));
  }
  return k;
}

/// Draw counts for every outcome with mean P * rate * duration. Counts are
/// independent across outcomes and reproducible for a fixed seed.
inline CoincidenceTable sample_counts(const CoincidenceTable& exact, double pair_rate_hz,
                                      double duration_s, uint64_t seed) {
  if (!(pair_rate_hz > 0.0)) throw std::invalid_argument("sample_counts: rate must be > 0");
  if (!(duration_s > 0.0)) throw std::invalid_argument("sample_counts: duration must be > 0");
  CoincidenceTable out = exact;
  out.seed = seed;
  out.pair_rate_hz = pair_rate_hz;
  out.duration_s = duration_s;
  out.counts.clear();
  uint64_t index = 0;
  for (const auto& [o, p] : exact.outcomes) {
    std::mt19937_64 rng(derive_seed(seed, index++));
    out.counts[o] = sample_poisson(rng, p * pair_rate_hz * duration_s);
  }
  return out;
}

}  // namespace biphoton
