#pragma once

#include <cstdint>
#include <vector>

#include "afc/errors.hpp"
#include "afc/int128.hpp"

namespace afc {

// splitmix64. Fixed algorithm so byte-level reproducibility does not depend
// on the standard library's distribution implementations.
struct SplitMix64 {
  u64 state = 0;

  explicit SplitMix64(u64 seed) : state(seed) {}

  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, bound) by rejection.
  u64 below(u64 bound) {
    require(bound > 0, "rng", "below(0)");
    u64 threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      u64 r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

inline u64 mix_u64(u64 a, u64 b) {
  SplitMix64 s(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return s.next();
}

inline u64 hash_seed(std::initializer_list<u64> parts) {
  u64 h = 0x6a09e667f3bcc908ULL;
  for (u64 p : parts) h = mix_u64(h, p);
  return h;
}

// `size` distinct values from [0, range), deterministic in `seed`.
inline std::vector<u64> sample_without_replacement(u64 range, u64 size, u64 seed) {
  require(size <= range, "rng", "sample size exceeds range");
  SplitMix64 rng(seed);
  std::vector<u64> out;
  out.reserve(size);
  if (size > range / 2) {
    // Dense request: partial Fisher-Yates over the whole range.
    std::vector<u64> pool(range);
    for (u64 i = 0; i < range; ++i) pool[i] = i;
    for (u64 i = 0; i < size; ++i) {
      u64 j = i + rng.below(range - i);
      std::swap(pool[i], pool[j]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    return out;
  }
  std::vector<bool> seen(range, false);
  while (out.size() < size) {
    u64 v = rng.below(range);
    if (!seen[v]) {
      seen[v] = true;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace afc
