#pragma once

#include <cstdint>

namespace tgrowth {

/// Counter-based SplitMix64: draw n of stream `seed` is mix(seed + (n+1) * gamma),
/// so any draw can be recomputed from (seed, n) alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : seed_(seed) {}

  static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) noexcept {
    std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept { return at(seed_, counter_++); }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace tgrowth
