#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace eonsim {

// SplitMix64, used only to expand one base seed into independent per-stream
// seeds. Streams never share state, so drawing an extra holding time can
// never shift the arrival process of an otherwise identical run.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::mt19937_64 make_stream(std::uint64_t base_seed, std::uint64_t stream_id) {
  SplitMix64 mix(base_seed);
  std::uint64_t seed = 0;
  for (std::uint64_t i = 0; i <= stream_id; ++i) {
    seed = mix.next();
  }
  return std::mt19937_64(seed);
}

// Uniform double in [0, 1) with 53 random bits. All distribution draws
// below go through this, keeping runs bit-reproducible across standard
// libraries (std::*_distribution is not portable, mt19937_64 is).
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double exponential_draw(std::mt19937_64& rng, double mean) {
  return -mean * std::log1p(-u01(rng));
}

// Unbiased integer in [0, n) by rejection sampling.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

}  // namespace eonsim
