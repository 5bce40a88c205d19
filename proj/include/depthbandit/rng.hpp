#pragma once

#include <cstdint>
#include <cmath>
#include <span>
#include <algorithm>

namespace depthbandit {

// splitmix64 finalizer, used to expand seeds and derive substreams.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic xoshiro256** generator. The standard library distributions
/// are implementation-defined, so all bounded/real/normal draws are done by
/// hand here to keep outputs reproducible across compilers.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t s = seed;
        for (auto& w : state_) {
            s = mix64(s);
            w = s;
        }
    }

    /// Substream derivation: streams for distinct ids are independent of the
    /// number of draws consumed from any other stream.
    static Rng for_stream(uint64_t seed, uint64_t stream) {
        return Rng(mix64(seed ^ mix64(stream + 0x51ed2701a3c5e491ULL)));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unbiased uniform integer in [0, bound), bound >= 1.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (-bound) % bound;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal via Box-Muller; caches the paired deviate.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// k distinct indices in [0, n), written sorted ascending. Rejection
    /// sampling; intended for k << n.
    void sample_distinct(int n, int k, int* out) {
        for (int j = 0; j < k; ++j) {
            for (;;) {
                const int candidate = static_cast<int>(next_below(static_cast<uint64_t>(n)));
                bool dup = false;
                for (int m = 0; m < j; ++m) {
                    if (out[m] == candidate) { dup = true; break; }
                }
                if (!dup) { out[j] = candidate; break; }
            }
        }
        std::sort(out, out + k);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace depthbandit
