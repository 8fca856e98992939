#pragma once

#include <cstdint>
#include <random>

namespace portopt::rng {

/// The one random engine used throughout the library. mt19937_64 has a
/// standardized output sequence, so a fixed seed reproduces a run bit for bit.
using Engine = std::mt19937_64;

/// Stafford's splitmix64 finalizer; decorrelates nearby seed values.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and an index
/// (per-trial, per-lambda, ...). Stable across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

/// Uniform double in [lo, hi) built from the top 53 bits of the engine
/// output. Avoids std::uniform_real_distribution, whose mapping is
/// implementation-defined.
inline double uniform(Engine& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

/// Uniform index in [0, n). Modulo bias is negligible for n far below 2^64.
inline std::size_t uniform_index(Engine& gen, std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
}

}  // namespace portopt::rng
