#pragma once

#include <cstdint>
#include <random>

namespace gammax {

/// All randomness flows through caller-supplied engines; the library never
/// touches ambient entropy. mt19937_64 output is pinned by the standard,
/// which is what makes seeded runs bit-reproducible.
using Rng = std::mt19937_64;

/// splitmix64; used to derive independent child seeds from a root seed.
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t index) {
    std::uint64_t z = root + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n); fixed-width multiply keeps the draw cheap and
/// deterministic (bias is below n / 2^64).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

} // namespace gammax
