#pragma once

#include <cstdint>

namespace vform {

// splitmix64 stream. Small state, good enough statistics for placement and
// tie breaking, and trivially reproducible across platforms. The draw counter
// exists so tests can assert exactly how much randomness a code path consumed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        ++draws_;
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double nextUnit() { return double(next() >> 11) * 0x1.0p-53; }

    // modulo, not rejection: the bias is below bound/2^64 and the bounds used
    // here are tiny, while the fixed one-draw cost keeps streams predictable
    std::uint64_t nextBelow(std::uint64_t bound) { return next() % bound; }

    int nextBit() { return int(next() >> 63); }

    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

inline std::uint64_t splitmixScramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// stable 3-way seed derivation (base seed, grid cell, run index)
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmixScramble(a + 0x9E3779B97F4A7C15ULL);
    h = splitmixScramble(h ^ (b + 0xBF58476D1CE4E5B9ULL));
    h = splitmixScramble(h ^ (c + 0x94D049BB133111EBULL));
    return h;
}

}  // namespace vform
