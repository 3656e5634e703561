#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded draws must reproduce bit-for-bit across standard libraries, so the
// distributions are spelled out here instead of using <random>'s distribution
// adaptors (the standard pins mt19937_64 but leaves e.g. normal_distribution
// implementation-defined).

namespace kuramoto {

// Uniform double in [0, 1): top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [-pi, pi).
inline double uniform_angle(std::mt19937_64& rng) {
    return (uniform01(rng) - 0.5) * 2.0 * M_PI;
}

// Standard normal via the Box-Muller transform. Consumes exactly two engine
// draws and returns both variates; callers wanting a stream should cache the
// second.
struct NormalPair {
    double first;
    double second;
};

inline NormalPair normal_pair(std::mt19937_64& rng) {
    // (k + 0.5) * 2^-53 keeps u1 strictly inside (0, 1) so log(u1) is finite.
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace kuramoto
