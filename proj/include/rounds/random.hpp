#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rounds {

__extension__ typedef unsigned __int128 uint128;

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
}

/// xoshiro256** (period 2^256 - 1). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    /// Substream for trial `index` of a run seeded with `master_seed`:
    /// the generator seeded with mix64(master_seed ^ mix64(index)).
    static constexpr Xoshiro256 substream(std::uint64_t master_seed, std::uint64_t index) noexcept {
        return Xoshiro256(mix64(master_seed ^ mix64(index)));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

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

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Uniform on (0, 1) with 53-bit resolution; a zero draw becomes 2^-53.
template <class Gen>
double uniform_open(Gen& gen) {
    constexpr double step = 0x1.0p-53;
    const double u = static_cast<double>(gen() >> 11) * step;
    return u > 0.0 ? u : step;
}

/// Uniform integer in [0, bound), Lemire's multiply-and-reject.
template <class Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t bound) {
    uint128 m = static_cast<uint128>(gen()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<uint128>(gen()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace rounds
