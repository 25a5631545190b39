#pragma once

#include <cstdint>

namespace galton {

/// Deterministic counter-style PRNG (splitmix64 core).
///
/// A generator is identified by (seed, stream). Deriving one stream per
/// attempt or shot makes runs reproducible bit-for-bit and lets callers
/// process shots in any order, or in parallel, without sharing state.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0)
        : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))) {}

    /// Next raw 64-bit value.
    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Bernoulli trial: true with probability p.
    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) { return next_u64() % n; }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

} // namespace galton
