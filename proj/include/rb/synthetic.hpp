#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rb/rng.hpp"
#include "rb/timeseries.hpp"

namespace rb::synthetic {

/// x_t = phi * x_{t-1} + sigma * eps_t, x_0 = sigma * eps_0.
inline std::vector<double> ar1(std::size_t length, double phi, std::uint64_t seed,
                               double sigma = 1.0) {
    Rng rng(seed);
    std::vector<double> x(length);
    double prev = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        prev = phi * prev + sigma * rng.gaussian();
        x[t] = prev;
    }
    return x;
}

inline std::vector<double> random_walk(std::size_t length, std::uint64_t seed,
                                       double sigma = 1.0) {
    return ar1(length, 1.0, seed, sigma);
}

inline std::vector<double> white_noise(std::size_t length, std::uint64_t seed,
                                       double sigma = 1.0) {
    Rng rng(seed);
    std::vector<double> x(length);
    for (auto& v : x) v = sigma * rng.gaussian();
    return x;
}

inline std::vector<double> sine(std::size_t length, double period, double amplitude = 1.0) {
    std::vector<double> x(length);
    for (std::size_t t = 0; t < length; ++t)
        x[t] = amplitude * std::sin(2.0 * M_PI * static_cast<double>(t) / period);
    return x;
}

inline std::vector<double> sine_plus_noise(std::size_t length, double period, double amplitude,
                                           double sigma, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x = sine(length, period, amplitude);
    for (auto& v : x) v += sigma * rng.gaussian();
    return x;
}

/// First half at `low`, second half at `high`, plus Gaussian noise.
inline std::vector<double> step(std::size_t length, double low, double high, double sigma,
                                std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(length);
    for (std::size_t t = 0; t < length; ++t)
        x[t] = (t < length / 2 ? low : high) + sigma * rng.gaussian();
    return x;
}

inline std::vector<double> line(std::size_t length, double intercept = 0.0, double slope = 1.0) {
    std::vector<double> x(length);
    for (std::size_t t = 0; t < length; ++t) x[t] = intercept + slope * static_cast<double>(t);
    return x;
}

} // namespace rb::synthetic
