#pragma once

#include <cmath>
#include <cstdint>

namespace framelab {

// splitmix64: small counter-based generator used wherever the contract
// requires reproducible pseudo-randomness without external dependencies.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double uniform01_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller. Draws two uniforms per call.
    double gaussian() {
        double u = uniform01_open();
        double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
    }
};

// Decorrelates per-item streams: stream i of a run seeded with `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return mix.next();
}

}  // namespace framelab
