#pragma once

#include <cstdint>

namespace expcode::rng {

// Counter-based generator: every draw is a hash of (seed, stream, i, j), so
// results are reproducible regardless of evaluation order or parallel
// scheduling. splitmix64 finalizer, standard constants.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Distinct streams keep independent uses of the same seed uncorrelated.
enum Stream : std::uint64_t {
    kStreamExpansion = 1,
    kStreamChannelInput = 2,
    kStreamChannelNoise = 3,
    kStreamBootstrap = 4,
};

inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t i,
                               std::uint64_t j) noexcept {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ stream);
    h = splitmix64(h ^ i);
    h = splitmix64(h ^ j);
    return h;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t i,
                            std::uint64_t j) noexcept {
    return static_cast<double>(keyed_u64(seed, stream, i, j) >> 11) * 0x1.0p-53;
}

/// Levels can be negative; map them to the 64-bit key domain.
inline std::uint64_t level_key(int level) noexcept {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(level));
}

}  // namespace expcode::rng
