#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rb {

/**
 * Deterministic random source used by fixtures, the forest model, and tests.
 * Draws are derived from raw mt19937_64 output (no distribution objects), so
 * a given seed produces the same stream on every platform and compiler.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in (0, 1).
    double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53; }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform index in [0, n). Modulo bias is negligible for the sizes used here.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    std::uint64_t next() { return gen_(); }

    /// Stateless mix for deriving independent per-task seeds (splitmix64 step).
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace rb
