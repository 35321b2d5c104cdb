#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "rb/errors.hpp"
#include "rb/linalg.hpp"
#include "rb/stats.hpp"

namespace rb {

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double r4 = 0.0; // 1 - p
    int lags = 0;
};

namespace detail {

inline double stdnorm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/**
 * MacKinnon (1994) response-surface p-value for the constant-only
 * Dickey-Fuller t distribution; the tail polynomials are unreliable outside
 * [0.001, 0.999], so the result is clamped to that range.
 */
inline double mackinnon_p_const(double tau) {
    constexpr double tau_max = 2.74;
    constexpr double tau_min = -18.83;
    constexpr double tau_star = -1.61;
    double p;
    if (tau > tau_max) {
        p = 1.0;
    } else if (tau < tau_min) {
        p = 0.0;
    } else if (tau <= tau_star) {
        p = stdnorm_cdf(2.1659 + tau * (1.4412 + tau * 0.038269));
    } else {
        p = stdnorm_cdf(1.7339 + tau * (0.93202 + tau * (-0.12745 + tau * -0.010368)));
    }
    return std::clamp(p, 0.001, 0.999);
}

} // namespace detail

/**
 * Augmented Dickey-Fuller test, constant-only regression
 *   dx_t = alpha + gamma * x_{t-1} + sum_j delta_j * dx_{t-j} + e_t
 * with the lag order from the Schwert rule floor(12 * (T/100)^(1/4)),
 * capped at max_lag when max_lag >= 0.
 */
inline AdfResult adf_test(std::span<const double> x, int max_lag = -1) {
    const std::size_t n = x.size();
    if (n < 30) fail(ErrorCode::SeriesTooShort, "ADF test needs at least 30 observations");
    if (stats::variance(x) <= stats::kDegenerateTol)
        fail(ErrorCode::DegenerateSeries, "ADF regression undefined on constant series");

    int lags = static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    if (max_lag >= 0) lags = std::min(lags, max_lag);
    // keep enough residual degrees of freedom
    const int hard_cap = static_cast<int>(n) / 2 - 2;
    lags = std::max(0, std::min(lags, hard_cap));

    const auto dx = stats::diff(x);
    const std::size_t n_obs = dx.size() - static_cast<std::size_t>(lags);
    const std::size_t k = static_cast<std::size_t>(lags) + 2;
    if (n_obs <= k) fail(ErrorCode::SeriesTooShort, "too few observations for ADF lag order");

    std::vector<std::vector<double>> cols(k, std::vector<double>(n_obs));
    std::vector<double> y(n_obs);
    for (std::size_t i = 0; i < n_obs; ++i) {
        const std::size_t t = i + static_cast<std::size_t>(lags); // index into dx
        y[i] = dx[t];
        cols[0][i] = 1.0;
        cols[1][i] = x[t]; // x_{t-1} relative to dx[t] = x[t+1]-x[t]
        for (int j = 1; j <= lags; ++j) cols[1 + j][i] = dx[t - j];
    }

    const auto fit = linalg::ols(cols, y, 0.0, true);
    const double gamma = fit.coef[1];
    const double se = fit.stderr[1];
    if (!(se > 0.0)) fail(ErrorCode::DegenerateSeries, "zero standard error in ADF regression");

    AdfResult res;
    res.statistic = gamma / se;
    res.p_value = detail::mackinnon_p_const(res.statistic);
    res.r4 = 1.0 - res.p_value;
    res.lags = lags;
    return res;
}

} // namespace rb
