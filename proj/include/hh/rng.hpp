#pragma once

// Seeded sampling helpers. Uniform variates are derived from the raw
// mt19937_64 stream directly so that the byte stream of any report is a
// function of the seed alone, independent of the standard library's
// distribution implementations.

#include <cstdint>
#include <random>

namespace hh {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace hh
