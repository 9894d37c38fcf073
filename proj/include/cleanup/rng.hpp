#pragma once
// Deterministic 64-bit generator (splitmix64, Steele/Lea/Flood fixed-increment
// variant). All simulation randomness flows through this type so a trajectory
// is reproducible bit-for-bit from its seed on any platform. Bounded sampling
// uses Lemire's multiply-shift with rejection; unit doubles use the top 53 bits.

#include <cstdint>

namespace cleanup {

class SplitMix64 {
public:
    SplitMix64() = default;
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform in [0, n); n must be > 0.
    uint64_t next_below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto low = static_cast<uint64_t>(m);
        if (low < n) {
            const uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

    // Child stream seeded from this one; advances the parent by one draw.
    SplitMix64 split() { return SplitMix64(next_u64()); }

    uint64_t state() const { return state_; }
    bool operator==(const SplitMix64&) const = default;

private:
    uint64_t state_ = 0;
};

}  // namespace cleanup
