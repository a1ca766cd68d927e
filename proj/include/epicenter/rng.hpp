#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace epi {

// splitmix64 step (Steele, Lea & Flood; public domain reference code).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based seed derivation: the stream of work item `index` under a
/// parent `seed`.  Replicate i always sees the same stream no matter how
/// many workers run or in which order items are scheduled.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(s);
}

/// xoshiro256++ (Blackman & Vigna, prng.di.unimi.it), state filled through
/// splitmix64.  Hand-rolled helpers keep draw sequences identical across
/// standard libraries and platforms; std::*_distribution is not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(derive_seed(seed, stream)) {}

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Unbiased uniform integer in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() {
        // (x + 0.5) * 2^-53 keeps the radius argument strictly inside (0,1)
        const double u1 = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    double normal() { return normal_pair().first; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace epi
