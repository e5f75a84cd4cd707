#pragma once

#include <cstdint>
#include <random>

#include "hass/bigint.hpp"

namespace hass {

// Seeded deterministic randomness. All protocol sampling goes through this
// class so that identical seeds reproduce identical transcripts. mt19937_64
// output is fixed by the standard; distributions are hand-rolled because
// std::uniform_int_distribution is not portable across implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound), bound >= 1. Rejection sampling on the top chunk.
    std::uint64_t uniform_u64_below(std::uint64_t bound) {
        if (bound == 0) throw InvalidArgument("uniform_u64_below: bound 0");
        if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t v = engine_();
            if (v < limit) return v % bound;
        }
    }

    // Uniform BigInt in [0, bound).
    BigInt uniform_below(const BigInt& bound) {
        if (bound <= 0) throw InvalidArgument("uniform_below: bound <= 0");
        const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
        const unsigned words = (bits + 63) / 64;
        for (;;) {
            BigInt v = 0;
            for (unsigned i = 0; i < words; ++i) v = (v << 64) | engine_();
            v >>= (words * 64 - bits);
            if (v < bound) return v;
        }
    }

    // Uniform in [lo, hi] inclusive.
    BigInt uniform_range(const BigInt& lo, const BigInt& hi) {
        if (lo > hi) throw InvalidArgument("uniform_range: lo > hi");
        return lo + uniform_below(hi - lo + 1);
    }

    // Derive an independent child seed; used to give protocol sub-runs
    // their own streams (splitmix64 finalizer over the mixed inputs).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace hass
