#pragma once

#include <cstdint>

namespace fringescan {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: every draw is a pure function of (key, counter),
// so renders are bit-identical regardless of pixel visit order.
struct CounterRng {
  std::uint64_t key = 0;

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t view, std::uint64_t level,
                                  std::uint64_t sample) {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ view);
    k = splitmix64(k ^ level);
    k = splitmix64(k ^ sample);
    return k;
  }

  // Uniform in [0, 1).
  double uniform(std::uint64_t counter) const {
    std::uint64_t h = splitmix64(key ^ (counter * 0x9e3779b97f4a7c15ull + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (cosine branch). u1 lands in (0, 1] so
  // the logarithm is always finite.
  double normal(std::uint64_t counter) const;
};

}  // namespace fringescan
