#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rmove {

/**
 * Deterministic random stream derived from a master seed and a stream tag.
 *
 * Every randomized routine draws from its own tagged stream, so adding or
 * removing draws in one routine never shifts the values another one sees,
 * and the same (seed, tag) pair reproduces the same stream on any platform.
 * All mappings from raw 64-bit outputs to ranges are implemented here by
 * hand because the standard distributions are not bit-reproducible across
 * library implementations.
 */
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view tag)
      : engine_(splitmix64(seed ^ fnv1a64(tag))) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw from [0,1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform draw from [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer from {lo,...,hi} via rejection sampling (unbiased).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t raw;
    do {
      raw = next_u64();
    } while (raw >= limit);
    return lo + static_cast<std::int64_t>(raw % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rmove
