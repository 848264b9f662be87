#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace marketnet {

// Algorithm identifiers recorded in output metadata. mt19937_64 output is fully
// specified by the standard; pairing it with an explicit Fisher-Yates shuffle and
// Box-Muller transform keeps results reproducible per seed, where std::shuffle,
// std::uniform_int_distribution and std::normal_distribution are all
// implementation-defined.
inline constexpr const char* kShuffleAlgorithm = "mt19937_64-fy-v1";
inline constexpr const char* kGaussianAlgorithm = "mt19937_64-bm-v1";

// Uniform draw from [0, bound) without modulo bias; bound > 0.
inline std::uint64_t bounded_uint64(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % bound + 1) % bound;  // 2^64 mod bound
    std::uint64_t x = rng();
    if (rem != 0) {
        while (x > max - rem) x = rng();
    }
    return x % bound;
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uint64(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Standard-normal stream via the Box-Muller transform.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open01();
        const double u2 = uniform_open01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    // 53-bit uniform in (0, 1]; strictly positive so log() stays finite.
    double uniform_open01() { return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace marketnet
