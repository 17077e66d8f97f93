#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace spikeplan {

// Hand-rolled generators so that seeded runs are byte-identical across
// platforms and standard libraries (std distributions are not portable).

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed from a base seed and up to three indices.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t s = base;
    s = splitmix64(s) ^ (a * 0xff51afd7ed558ccdull);
    s = splitmix64(s) ^ (b * 0xc4ceb9fe1a85ec53ull);
    s = splitmix64(s) ^ (c * 0x9e3779b97f4a7c15ull);
    return splitmix64(s);
}

/// xoshiro256++ with splitmix64 seeding.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
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
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Box-Muller; consumes two uniforms per draw, no cached spare.
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return mean + stddev * r * std::cos(6.283185307179586 * u2);
    }

    /// Knuth's method; fine for the small means used here (<= 10).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

private:
    static uint64_t rotl(uint64_t v, int s) { return (v << s) | (v >> (64 - s)); }
    std::array<uint64_t, 4> state_{};
};

}  // namespace spikeplan
