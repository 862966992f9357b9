#pragma once

#include <cstdint>

namespace mext {

// splitmix64: tiny, portable, and stable across platforms, unlike the
// standard-library distributions. Sampling must be byte-reproducible.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Modulo bias is irrelevant at these ranges; determinism is what matters.
  uint64_t below(uint64_t n) { return next() % n; }
};

// Independent per-instance stream, stable under any work partitioning.
inline Rng instance_rng(uint64_t seed, uint64_t instance) {
  return Rng(seed + 0x9e3779b97f4a7c15ULL * (instance + 1));
}

}  // namespace mext
