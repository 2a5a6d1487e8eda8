#pragma once

#include <cstdint>

namespace ccx {

// SplitMix64: the single random generator used everywhere in this project.
// It hashes an incrementing 64-bit counter, so any (seed, stream) pair names
// a reproducible sequence independent of platform and thread schedule.
// Constants are the reference ones from Steele, Lea and Flood's SplittableRandom.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    // Derives an independent stream from a base seed, e.g. one per Monte-Carlo
    // sample or per search worker. stream 0 is not the same as the base seed.
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, bound) by rejection; exact, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

} // namespace ccx
