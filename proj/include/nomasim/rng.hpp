#pragma once

#include <array>
#include <cstdint>

namespace nomasim::rng {

/// SplitMix64 (Steele, Lea & Flood). One 64-bit state word; used to key
/// streams and to expand short seeds into larger generator states.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// The SplitMix64 output finalizer as a standalone bijective mixer.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna): 256-bit state, period 2^256 - 1,
/// passes BigCrush and PractRand. Seeding goes through SplitMix64 so any
/// 64-bit seed (including 0) yields a well-mixed nonzero state.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be >= 1. Debiased
  /// (Lemire's multiply-shift with rejection).
  std::uint64_t uniform_below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal deviate via Box-Muller. Two uniforms per sample,
  /// nothing cached, so the draw count per call is fixed.
  double normal();

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_;
};

using RandomStream = Xoshiro256StarStar;

/// Derives the stream for (master_seed, stream_index). The 64-bit key is
/// mix(master_seed ^ mix(stream_index + 2^64/phi)), expanded by the stream
/// constructor. Stream k is a pure function of (master_seed, k), so adding
/// more streams never perturbs existing ones.
RandomStream substream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Poisson sample with the given mean: Knuth's product method below mean
/// 30, Hörmann's PTRS transformed rejection above. Throws std::domain_error
/// for negative or non-finite means.
long poisson(RandomStream& stream, double mean);

}  // namespace nomasim::rng
