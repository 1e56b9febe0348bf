#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace emsched::rng {

// std::uniform_*_distribution output differs across standard libraries;
// these wrappers keep seeded streams bit-identical on every platform.

inline double uniform01(std::mt19937_64& gen) {
    return std::ldexp(static_cast<double>(gen() >> 11), -53);
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

inline std::uint64_t index(std::mt19937_64& gen, std::uint64_t n) {
    if (n == 0) return 0;
    for (;;) {
        std::uint64_t v = gen();
        std::uint64_t r = v % n;
        if (v - r <= std::uint64_t(-1) - (n - 1)) return r;
    }
}

} // namespace emsched::rng
