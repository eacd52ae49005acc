#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rftdist {

// SplitMix64 finalizer; used to derive independent sub-seeds from
// (seed, stream) so parallel steps stay reproducible.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Reproducible generator: std::mt19937_64 (whose output sequence the C++
// standard fixes) with integer, uniform and normal draws defined here rather
// than by the implementation-specific <random> distributions.
//   uniform_below(b): rejection sampling on the raw 64-bit draw.
//   uniform01():      top 53 bits scaled by 2^-53, in [0, 1).
//   normal():         Box-Muller cosine branch, one pair of draws per call.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % bound;
  }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rftdist
