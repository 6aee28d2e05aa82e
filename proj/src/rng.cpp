#include "nomasim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace nomasim::rng {

std::uint64_t Xoshiro256StarStar::uniform_below(std::uint64_t bound) {
  // Lemire, "Fast random integer generation in an interval" (2019).
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Xoshiro256StarStar::normal() {
  double u1 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;  // uniform01 can return exactly 0
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return radius * std::cos(two_pi * u2);
}

RandomStream substream(std::uint64_t master_seed, std::uint64_t stream_index) {
  const std::uint64_t key =
      SplitMix64::mix(master_seed ^ SplitMix64::mix(stream_index + 0x9E3779B97F4A7C15ull));
  return RandomStream(key);
}

namespace {

long poisson_knuth(RandomStream& stream, double mean) {
  const double limit = std::exp(-mean);
  long count = 0;
  double product = stream.uniform01();
  while (product > limit) {
    ++count;
    product *= stream.uniform01();
  }
  return count;
}

// Hörmann, "The transformed rejection method for generating Poisson random
// variables" (1993), algorithm PTRS. Valid for mean >= 10.
long poisson_ptrs(RandomStream& stream, double mean) {
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform01() - 0.5;
    const double v = stream.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<long>(k);
    }
  }
}

}  // namespace

long poisson(RandomStream& stream, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 30.0) return poisson_knuth(stream, mean);
  return poisson_ptrs(stream, mean);
}

}  // namespace nomasim::rng
