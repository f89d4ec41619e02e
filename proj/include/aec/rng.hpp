// rng.hpp -- SplitMix64, the pinned generator for all reproducible sampling.
//
// Constants are the ones published by Steele, Lea and Flood (2014); the
// sequence is fully determined by the seed, so results are identical across
// platforms and compilers.

#pragma once

#include <cstdint>

namespace aec {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound) via rejection; unbiased for any bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~0ULL / bound);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

private:
    std::uint64_t state_;
};

} // namespace aec
