#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace elmlc {

// Deterministic random source. The raw engine output is transformed with
// explicit arithmetic (never std::*_distribution, whose output is
// implementation-defined), so identical seeds reproduce identical draws
// bit-for-bit on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller (cosine branch; two uniforms per draw).
  double gaussian() {
    double u1 = 1.0 - uniform01();  // (0,1], keeps log finite
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent seed stream `stream` rooted at `base`. Streams with different
// ids never share draws, so adding a consumer does not disturb the others.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

}  // namespace elmlc
