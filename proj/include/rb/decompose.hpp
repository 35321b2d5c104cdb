#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rb/errors.hpp"
#include "rb/stats.hpp"

namespace rb {

/// Additive split of a series; components sum to the input exactly.
struct Decomposition {
    std::vector<double> trend;
    std::vector<double> seasonal;
    std::vector<double> residual;
};

namespace detail {

/// Centered moving average of window m (2 x m average for even m); edge
/// positions take the nearest interior value.
inline std::vector<double> centered_moving_average(std::span<const double> x, int m) {
    const std::size_t n = x.size();
    std::vector<double> trend(n, 0.0);
    const std::size_t half = static_cast<std::size_t>(m) / 2;
    const std::size_t lo = half;
    const std::size_t hi = n - 1 - half;

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = prefix[t] + x[t];
    auto window_sum = [&](std::size_t a, std::size_t b) { return prefix[b + 1] - prefix[a]; };

    for (std::size_t t = lo; t <= hi; ++t) {
        if (m % 2 == 1) {
            trend[t] = window_sum(t - half, t + half) / static_cast<double>(m);
        } else {
            double s = window_sum(t - half + 1, t + half - 1);
            s += 0.5 * (x[t - half] + x[t + half]);
            trend[t] = s / static_cast<double>(m);
        }
    }
    for (std::size_t t = 0; t < lo; ++t) trend[t] = trend[lo];
    for (std::size_t t = hi + 1; t < n; ++t) trend[t] = trend[hi];
    return trend;
}

} // namespace detail

/**
 * Classical additive decomposition. With a period m: moving-average trend and
 * mean-adjusted per-phase seasonal means. Without one: linear trend, zero
 * seasonal. The residual is always the remainder, so the three components
 * reconstruct the input exactly.
 */
inline Decomposition decompose(std::span<const double> x, std::optional<int> period) {
    const std::size_t n = x.size();
    const bool seasonal_path = period.has_value() && *period >= 2;
    if (seasonal_path) {
        if (n < 2 * static_cast<std::size_t>(*period))
            fail(ErrorCode::SeriesTooShort,
                 "decomposition with period " + std::to_string(*period) + " needs at least " +
                     std::to_string(2 * *period) + " observations");
    } else if (n < 5) {
        fail(ErrorCode::SeriesTooShort, "decomposition needs at least 5 observations");
    }

    Decomposition d;
    d.trend.resize(n);
    d.seasonal.assign(n, 0.0);
    d.residual.resize(n);

    if (seasonal_path) {
        const int m = *period;
        d.trend = detail::centered_moving_average(x, m);

        std::vector<double> phase_sum(static_cast<std::size_t>(m), 0.0);
        std::vector<std::size_t> phase_count(static_cast<std::size_t>(m), 0);
        for (std::size_t t = 0; t < n; ++t) {
            phase_sum[t % m] += x[t] - d.trend[t];
            ++phase_count[t % m];
        }
        double grand = 0.0;
        for (int p = 0; p < m; ++p) {
            phase_sum[p] /= static_cast<double>(phase_count[p]);
            grand += phase_sum[p];
        }
        grand /= static_cast<double>(m);
        for (std::size_t t = 0; t < n; ++t) d.seasonal[t] = phase_sum[t % m] - grand;
    } else {
        const auto line = stats::fit_line(x);
        for (std::size_t t = 0; t < n; ++t)
            d.trend[t] = line.intercept + line.slope * static_cast<double>(t);
    }

    for (std::size_t t = 0; t < n; ++t) d.residual[t] = x[t] - d.trend[t] - d.seasonal[t];
    return d;
}

} // namespace rb
