#pragma once

#include <cstdint>
#include <string_view>

namespace degradex {

// splitmix64 (Vigna). Used for seeding and seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** 1.0 (Blackman/Vigna, public domain). The generator is fixed by
// this project so that streams are reproducible across platforms; all sampling
// below is defined purely in terms of its 64-bit output (plus IEEE doubles),
// never in terms of implementation-defined standard-library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
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

    /** Uniform double in [0, 1), 53 random bits. */
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /** Uniform integer in [0, n). n must be > 0. */
    std::uint64_t uniform_below(std::uint64_t n) {
        // Lemire's multiply-shift with rejection; exact and fast.
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /** Uniform integer in [lo, hi], inclusive. */
    std::uint64_t uniform_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + uniform_below(hi - lo + 1);
    }

    /** Geometric on {1, 2, ...} with success probability p in (0, 1]. */
    std::uint64_t geometric(double p) {
        std::uint64_t k = 1;
        while (uniform() >= p) ++k;
        return k;
    }

    /** Poisson via Knuth's product-of-uniforms; fine for the small rates used here. */
    std::uint64_t poisson(double lambda);

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/**
 * Per-genome stream seed: FNV-1a over the id bytes folded into the master
 * seed with a splitmix64 finisher. Depends only on (master_seed, id), not on
 * corpus order.
 */
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view id);

}  // namespace degradex
