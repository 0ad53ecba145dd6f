#pragma once

#include <cmath>
#include <cstdint>

namespace segsim {

/// Seedable 64-bit generator (xoshiro256** seeded via splitmix64).
/// The contract is reproducibility: the same seed yields the same draw
/// sequence on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the 256-bit state
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
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

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential waiting time with the given rate (> 0).
    double exponential(double rate) { return -std::log1p(-next_double()) / rate; }

    /// Uniform integer in [0, n), n > 0.
    std::uint64_t uniform_below(std::uint64_t n) {
        // multiply-shift; bias is negligible for the n used here (n << 2^64)
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

/// Per-run substream: seed XOR run index, as scrambled by the seeding above.
inline RngStream substream(std::uint64_t seed, std::uint64_t run_index) {
    return RngStream(seed ^ run_index);
}

}  // namespace segsim
