#pragma once

#include <cstdint>

namespace specest {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Seed-derivation key. A value type: derive(salt) yields a statistically
/// independent child key, so per-replicate streams are reproducible no
/// matter how work is scheduled.
class SeedKey {
 public:
  explicit constexpr SeedKey(std::uint64_t seed) : state_(seed) {}

  constexpr SeedKey derive(std::uint64_t salt) const {
    std::uint64_t mixed =
        state_ ^ (detail::splitmix64(salt) + 0x9e3779b97f4a7c15ULL +
                  (state_ << 6) + (state_ >> 2));
    return SeedKey(detail::splitmix64(mixed));
  }

  constexpr std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ stream. Deterministic for a given SeedKey, portable across
/// platforms (no implementation-defined distributions involved).
class RngStream {
 public:
  explicit RngStream(SeedKey key) {
    std::uint64_t sm = key.value();
    bool any = false;
    for (auto& word : state_) {
      sm = detail::splitmix64(sm);
      word = sm;
      any = any || word != 0;
    }
    if (!any) state_[0] = 0x1ULL;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint32_t next_below(std::uint32_t bound) {
    // Lemire's multiply-shift rejection method.
    std::uint64_t x = next_u64() >> 32;
    std::uint64_t m = x * bound;
    std::uint32_t low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        x = next_u64() >> 32;
        m = x * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  /// +1 or -1 with equal probability.
  double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_[4];
};

}  // namespace specest
