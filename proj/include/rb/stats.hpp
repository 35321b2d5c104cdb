#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rb/errors.hpp"

namespace rb::stats {

/// Tolerance below which a variance is treated as zero.
inline constexpr double kDegenerateTol = 1e-12;

inline double mean(std::span<const double> x) {
    if (x.empty()) fail(ErrorCode::Empty, "mean of empty vector");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

/// Sample variance, denominator n-1.
inline double variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

/// Population variance, denominator n.
inline double variance_population(std::span<const double> x) {
    if (x.empty()) fail(ErrorCode::Empty, "variance of empty vector");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

inline double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }
inline double stddev_population(std::span<const double> x) { return std::sqrt(variance_population(x)); }

/// Lag-1 sample autocorrelation: centered lag-1 autocovariance over lag-0.
inline double acf1(std::span<const double> x) {
    if (x.size() < 3) fail(ErrorCode::SeriesTooShort, "acf1 needs at least 3 observations");
    const double m = mean(x);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double d = x[t] - m;
        den += d * d;
        if (t + 1 < x.size()) num += d * (x[t + 1] - m);
    }
    if (den <= kDegenerateTol * static_cast<double>(x.size()))
        fail(ErrorCode::DegenerateSeries, "acf1 undefined on zero-variance series");
    return num / den;
}

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};

/// OLS fit of x_t on the index t = 0..n-1.
inline LineFit fit_line(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) return {n == 1 ? x[0] : 0.0, 0.0};
    const double nd = static_cast<double>(n);
    const double t_mean = (nd - 1.0) / 2.0;
    const double x_mean = mean(x);
    double sxt = 0.0;
    double stt = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dt = static_cast<double>(t) - t_mean;
        sxt += dt * (x[t] - x_mean);
        stt += dt * dt;
    }
    const double slope = stt > 0.0 ? sxt / stt : 0.0;
    return {x_mean - slope * t_mean, slope};
}

inline std::vector<double> diff(std::span<const double> x) {
    std::vector<double> d;
    if (x.size() < 2) return d;
    d.reserve(x.size() - 1);
    for (std::size_t t = 1; t < x.size(); ++t) d.push_back(x[t] - x[t - 1]);
    return d;
}

} // namespace rb::stats
