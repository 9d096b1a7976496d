#pragma once

#include <cstdint>

namespace cubelink {

/// SplitMix64 (Steele, Lea, Flood). The exact output sequence is part of the
/// sampled-certification contract, so this must never be swapped for a
/// standard-library engine whose streams differ between implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next(); }

 private:
  std::uint64_t state_;
};

/// Seed of the index-th instance of a sampled stream. Instances are seeded
/// independently so any index can be regenerated without replaying the stream.
inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64(seed ^ (0xD1B54A32D192ED03ULL * (index + 1))).next();
}

}  // namespace cubelink
