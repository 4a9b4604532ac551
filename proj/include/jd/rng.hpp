#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace jd::rng {

// All randomness in this library flows through SplitMix64 (Steele, Lea,
// Flood 2014). The generator is fixed on purpose: given the same seed the
// produced streams are identical on every run, which makes every experiment
// in the library replayable from its seed alone.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output function (also used as a seed/stream mixer).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from (master, tag, index).
/// Used for per-repeat, per-level and per-purpose streams so that parallel
/// consumers never share state and results do not depend on scheduling.
inline std::uint64_t derive(std::uint64_t master, std::uint64_t tag,
                            std::uint64_t index = 0) {
    std::uint64_t h = master;
    h = mix64(h + kGolden * (tag + 1));
    h = mix64(h + kGolden * (index + 1));
    return h;
}

// Stream tags used across the library. Kept in one place so no two call
// sites accidentally derive the same substream from a master seed.
inline constexpr std::uint64_t kTagFamily = 0x01;
inline constexpr std::uint64_t kTagNoise = 0x02;
inline constexpr std::uint64_t kTagRepeat = 0x03;
inline constexpr std::uint64_t kTagLevel = 0x04;
inline constexpr std::uint64_t kTagProbe = 0x05;
inline constexpr std::uint64_t kTagDemo = 0x06;

class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform double in (0, 1].
    double uniform_open0() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller. Each call consumes exactly two
    /// uniforms and returns the cosine branch only, so the i-th normal of a
    /// stream is a fixed function of the seed, independent of call pattern.
    double normal() {
        const double u1 = uniform_open0();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    std::vector<double> normal_vector(int n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = normal();
        return v;
    }

private:
    std::uint64_t state_;
};

}  // namespace jd::rng
