#pragma once

#include <cstdint>

#include "hv2q/vec3.hpp"

namespace hv2q {

/// splitmix64 step; used for seeding and for deriving per-chunk streams.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with a splitmix64-expanded seed. Bit-identical streams for a
/// given seed on every platform; this is what makes reports reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (the spare value is cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform01();
        while (u <= 0.0) u = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double phi = 6.283185307179586476925286766559 * uniform01();
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Seed for an independent substream (one per Monte Carlo chunk).
inline uint64_t substream_seed(uint64_t seed, uint64_t index) {
    uint64_t st = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64(st);
}

/// Uniform point on the unit sphere: z uniform on [-1, 1], azimuth uniform.
inline Vec3 sample_unit_sphere(Rng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = 6.283185307179586476925286766559 * rng.uniform01();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

/// Uniform angle on the unit circle, in [0, 2*pi).
inline double sample_circle_angle(Rng& rng) {
    return 6.283185307179586476925286766559 * rng.uniform01();
}

}  // namespace hv2q
