#pragma once

#include <cstdint>
#include <random>

namespace ctopo {

/// Seeded generator with a fixed, platform-independent output stream:
/// 64-bit Mersenne Twister (std::mt19937_64, whose sequence is pinned by the
/// C++ standard) with explicit conversions below. Standard-library
/// distributions are avoided because their algorithms are unspecified.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % n;
    }

    bool coin() { return next() >> 63; }

private:
    std::mt19937_64 engine_;
};

}  // namespace ctopo
