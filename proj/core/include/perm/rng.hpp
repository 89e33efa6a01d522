#pragma once

#include <cstdint>
#include <initializer_list>

namespace perm {

/// Counter-based splittable pseudo-random stream.
///
/// Streams are derived from a base seed plus a key path, so independent
/// consumers (rows of a sample matrix, trials of an experiment) can draw
/// from non-overlapping streams without sharing mutable state.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    /// Derive a stream from a seed and a key path, e.g. (seed, trial, row).
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = mix(seed);
        for (std::uint64_t k : path) s = mix(s ^ mix(k + 0x9e3779b97f4a7c15ULL));
        return Rng(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace perm
