#pragma once

#include <cstdint>

namespace gtg {

// SplitMix64 (Steele/Lea/Flood). Small, fast, and its output is a bijection
// of the state counter, so derived per-node / per-pair streams never collide.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64 and
    // keeps streams platform-independent.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

// Derives an independent stream seed from a base seed and an index.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    SplitMix64 s(a ^ (b + 0x632BE59BD9B4E019ull) * 0x9E3779B97F4A7C15ull);
    s.next();
    return s.next();
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b), c);
}

}  // namespace gtg
