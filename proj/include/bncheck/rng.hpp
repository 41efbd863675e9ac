#ifndef BNCHECK_RNG_HPP
#define BNCHECK_RNG_HPP

/*
 * Random number generation.
 *
 * The generator identity is part of the output contract: graphs sampled for a
 * given (n, p, seed) must stay bit-identical across releases. Changing any
 * constant in this file is a breaking change.
 *
 *   - mix64: the SplitMix64 finalizer (a bijection on 64-bit words).
 *   - Xoshiro256StarStar: xoshiro256** 1.0, state filled from SplitMix64(seed).
 *   - uniform01: top 53 bits of one draw scaled by 2^-53, in [0, 1).
 */

#include <array>
#include <cstdint>
#include <limits>

namespace bncheck {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr result_type operator()() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t state_;
};

class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256StarStar(std::uint64_t seed) noexcept {
        SplitMix64 init(seed);
        for (auto& word : s_) word = init();
    }

    constexpr result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) from one draw.
    constexpr double uniform01() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Seed for trial `trial` of a run seeded with `master`:
/// mix64(mix64(master) + (trial + 1) * golden_gamma).
/// For fixed master the map is injective over all 2^64 trial indices, since
/// multiplication by an odd constant and mix64 are both bijections.
inline constexpr std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
    return mix64(mix64(master) + (trial + 1) * kGoldenGamma);
}

} // namespace bncheck

#endif
