#pragma once

#include <cstdint>

namespace evidential {

// Counter-based generator: the draw at position i of a stream is a pure
// function of (seed, stream, i), so any partition of an index range across
// workers reproduces the same values bit for bit. The mixing function is
// the splitmix64 finalizer (Vigna 2015, after Steele, Lea and Flood 2014).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed + (stream + 1) * kStreamGamma)) {}

  std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix(key_ + (index + 1) * kGamma);
  }

  // Uniform draw in the open interval (0,1): top 53 bits plus a half-ulp
  // offset, so neither endpoint is reachable.
  double uniform(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kStreamGamma = 0xD1B54A32D192ED03ULL;

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace evidential
