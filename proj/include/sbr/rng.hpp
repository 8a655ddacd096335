#pragma once

#include <cstdint>

namespace sbr {

// Counter-based SplitMix64: value i of stream `seed` is mix(seed + (i+1)*phi).
// Stateless by construction, so any draw can be computed independently of the
// others -- replications and parallel sweeps stay bit-identical no matter how
// the work is scheduled. Same mixing constants as the reference SplitMix64.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform01_at(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
}

} // namespace sbr
