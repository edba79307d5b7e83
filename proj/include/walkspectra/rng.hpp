#pragma once

#include <cstdint>

namespace walkspectra {

// Counter-based 64-bit generator: the i-th output (0-based) is the SplitMix64
// finaliser applied to seed + (i + 1) * 0x9E3779B97F4A7C15. It reproduces the
// reference SplitMix64 stream, and any position can be computed directly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z);
  static std::uint64_t output_at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGamma);
  }

  std::uint64_t next() { return output_at(seed_, counter_++); }
  // Uniform integer in [0, bound), bound > 0, by multiply-and-reject.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Seed for an independent trial stream.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return seed ^ trial; }

}  // namespace walkspectra
