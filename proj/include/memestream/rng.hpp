#pragma once

#include <cstdint>
#include <random>

namespace memestream {

// Hand-rolled draws on top of mt19937_64 (whose output sequence the standard
// fully specifies), so seeded runs replay identically across toolchains.
inline std::uint64_t bounded_rand(std::mt19937_64& g, std::uint64_t n) {
    // rejection sampling over the top of the range to stay unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % n;
}

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace memestream
