#ifndef CONCORD_RNG_HPP
#define CONCORD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace concord {

/// Deterministic 64-bit generator (splitmix64, Steele/Lea/Flood 2014).
/// Output depends only on the seed, never on platform or standard-library
/// internals, so every seeded run is reproducible bit for bit. Sub-streams
/// for parallel work are derived with derive_seed(seed, index).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection sampling keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Symmetric Dirichlet(1,...,1) row: normalized unit exponentials.
    void dirichlet_row(std::span<double> out) {
        double sum = 0.0;
        for (double& v : out) {
            v = -std::log(1.0 - next_double());
            sum += v;
        }
        for (double& v : out) v /= sum;
    }

    /// Fisher-Yates shuffle driven by this generator.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Independent sub-stream seed for (seed, index); used so parallel and serial
/// schedules of the same work draw identical randomness.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0xA5A5A5A55A5A5A5AULL + index * 0x9E3779B97F4A7C15ULL));
    mix.next_u64();
    return mix.next_u64();
}

}  // namespace concord

#endif
