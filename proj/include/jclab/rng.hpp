// rng.hpp — deterministic per-sample random streams.
//
// Every Monte-Carlo candidate with global index i draws from its own
// engine seeded by (master_seed, i), so ensembles are reproducible
// independent of worker count and evaluation order. The engine is
// xoshiro256** with splitmix64 state initialization: constructing one
// stream is a handful of multiplies, cheap enough for rejection scans
// that touch billions of candidate indices.

#pragma once

#include <cstdint>
#include <random>

namespace jclab {

// SplitMix64 step; used to whiten seeds and fill engine state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** (Blackman & Vigna), UniformRandomBitGenerator-compatible.
class Rng {
  public:
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    explicit Rng(std::uint64_t seed) {
        for (auto& word : state_) word = splitmix64(seed);
    }

    result_type operator()() {
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

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Independent engine for sample `index` of a stream rooted at `seed`.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ 0xA02C3F1D9E84B7ULL;
    std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ ((index + 0x632BE59BD9B4E019ULL) * 0xD6E8FEB86659FD93ULL);
    return Rng(t);
}

// Sub-stream derivation for nested sampling (e.g. one seed per table cell).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed + 0x8BB84B93962EACC9ULL * (salt + 1);
    return splitmix64(s);
}

} // namespace jclab
