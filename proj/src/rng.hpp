#ifndef DIVSCOPE_RNG_HPP
#define DIVSCOPE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

// Seed-reproducible randomness. The engine is std::mt19937_64, whose output
// stream is fully specified by the standard, so identical seeds give
// identical draws on every platform. The distributions are implemented here
// because the standard library's distribution objects are not portable.

namespace divscope {

// Uniform integer in [0, bound) by rejection, no modulo bias. bound > 0.
inline std::uint64_t bounded_uint64(std::mt19937_64& eng, std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t x = eng();
        if (x >= threshold) return x % bound;
    }
}

// Uniform double in (0, 1], 53-bit resolution. Never returns 0, so it is
// safe under a logarithm.
inline double uniform_open_closed(std::mt19937_64& eng) {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform double in [0, 1).
inline double uniform_closed_open(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Standard normal draws via Box-Muller, two per pair of uniforms. For odd n
// the second member of the last pair is discarded; the engine state still
// advances deterministically.
inline void fill_gaussian(std::mt19937_64& eng, double* out, std::size_t n) {
    const double two_pi = 6.283185307179586476925286766559;
    std::size_t i = 0;
    while (i < n) {
        const double u1 = uniform_open_closed(eng);
        const double u2 = uniform_closed_open(eng);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        out[i++] = radius * std::cos(two_pi * u2);
        if (i < n) out[i++] = radius * std::sin(two_pi * u2);
    }
}

}  // namespace divscope

#endif
