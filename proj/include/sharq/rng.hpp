#pragma once

#include <cstdint>
#include <string_view>

namespace sharq {

/// SplitMix64 (Steele, Lea & Burley). State transition: the state advances by
/// the 64-bit golden-ratio increment 0x9E3779B97F4A7C15 and each output is the
/// variant-13 mix of the new state. Identical across platforms, which keeps
/// verification reports reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n) by rejection, so the distribution is unbiased and
    /// platform-independent.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            uint64_t v = next();
            if (v >= threshold) return v % n;
        }
    }

    /// Uniform integer in [lo, hi] inclusive.
    int64_t between(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

private:
    uint64_t state_;
};

/// FNV-1a, used to derive independent deterministic streams per check id.
inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// One scrambling step of SplitMix64, used to combine seed material.
inline uint64_t mix64(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace sharq
