#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rb/stats.hpp"

namespace rb::fft {

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Iterative radix-2 Cooley-Tukey; size must be a power of two.
inline void transform(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/**
 * Periodogram of the mean-removed series, zero-padded to the next power of
 * two. Returns powers |X_k|^2 for k = 1..N/2 (DC bin excluded).
 */
inline std::vector<double> periodogram(std::span<const double> x) {
    if (x.size() < 2) return {};
    const double m = stats::mean(x);
    const std::size_t n = next_power_of_two(x.size());
    std::vector<std::complex<double>> a(n, {0.0, 0.0});
    for (std::size_t t = 0; t < x.size(); ++t) a[t] = {x[t] - m, 0.0};
    transform(a);
    std::vector<double> power(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) power[k - 1] = std::norm(a[k]);
    return power;
}

} // namespace rb::fft
