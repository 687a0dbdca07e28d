#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hawkesim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Scrambles seeds so that nearby values (base, base+1, ...)
// produce decorrelated engine states.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Per-path seed used by every multi-path routine: base seed plus path index.
inline std::uint64_t path_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

// Independent sub-stream seed for routines that consume several streams
// (e.g. event times vs. mark chain) from one caller-facing seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

// Uniform on [0, 1) built directly from the top 53 bits; avoids distribution state.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exponential with the given rate; rejects the u = 0 corner so gaps are positive.
inline double exponential(Rng& rng, double rate) {
  double u = uniform01(rng);
  while (u <= 0.0) u = uniform01(rng);
  return -std::log1p(-u) / rate;
}

// Standard normal. A fresh distribution per call keeps the draw a pure function
// of the engine state (no cached second variate), so streams are replayable.
inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

}  // namespace hawkesim
