#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "windsim/vec.hpp"

namespace windsim {

// SplitMix64 (Steele/Lea/Flood; Vigna's fixed-increment variant). Small state,
// passes BigCrush, and streams derived from distinct seeds are independent
// enough for Monte Carlo use. All sampling is hand-rolled so ensembles are
// bit-reproducible across platforms and standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    double next_exponential(double mean) {
        // 1 - u in (0, 1] keeps the log finite.
        return -mean * std::log(1.0 - next_double());
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform direction on the unit sphere.
    Vec3 next_unit_vector3() {
        double z = next_uniform(-1.0, 1.0);
        double a = next_uniform(0.0, 6.283185307179586476925286766559);
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {s * std::cos(a), s * std::sin(a), z};
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Counter-based stream derivation: (seed, index) -> independent stream seed.
// Used so per-path / per-module generators never share state.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    mix.next_u64();
    return mix.next_u64();
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view label) {
    return derive_stream(seed, fnv1a64(label));
}

}  // namespace windsim
