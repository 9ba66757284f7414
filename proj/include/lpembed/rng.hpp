#pragma once

#include <cstdint>
#include <vector>

// Portable, seedable RNG so fixtures reproduce across platforms and
// reimplementations: xoshiro256** (Blackman & Vigna) seeded via SplitMix64.
// All generator output is fully determined by the 64-bit seed.

namespace lpembed {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Independent stream derived from (seed, index); used for per-trial rngs.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed;
        std::uint64_t mixed = splitmix64(sm) ^ (0xD1B54A32D192ED03ULL * (index + 1));
        return Rng(mixed);
    }

    std::uint64_t next_u64() {
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

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound > 0. Rejection sampling keeps the
    // distribution exact for any bound.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // s distinct values from [0, n), uniform, via partial Fisher-Yates.
    std::vector<int> sample_without_replacement(int n, int s) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < s; ++i) {
            int j = i + static_cast<int>(uniform_int(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(s);
        return pool;
    }

    std::vector<int> sample_with_replacement(int n, int s) {
        std::vector<int> out(s);
        for (int i = 0; i < s; ++i) out[i] = static_cast<int>(uniform_int(static_cast<std::uint64_t>(n)));
        return out;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

}  // namespace lpembed
