#pragma once

#include <cstdint>

namespace pb {

/// PCG XSL-RR 128/64: a 64-bit output permuted congruential generator.
/// Pinned by algorithm so that seeded reports reproduce across platforms.
class Pcg64 {
 public:
  explicit Pcg64(std::uint64_t seed, std::uint64_t stream = 0x5851f42d4c957f2dULL) {
    state_ = 0;
    inc_ = (static_cast<u128>(stream) << 1u) | 1u;
    next();
    state_ += (static_cast<u128>(seed) << 64) | seed;
    next();
  }

  std::uint64_t next() {
    state_ = state_ * kMultiplier + inc_;
    const std::uint64_t xored =
        static_cast<std::uint64_t>(state_ >> 64) ^ static_cast<std::uint64_t>(state_);
    const unsigned rot = static_cast<unsigned>(state_ >> 122);
    return (xored >> rot) | (xored << ((-rot) & 63u));
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  using u128 = unsigned __int128;
  static constexpr u128 kMultiplier =
      (static_cast<u128>(2549297995355413924ULL) << 64) | 4865540595714422341ULL;
  u128 state_{};
  u128 inc_{};
};

}  // namespace pb
