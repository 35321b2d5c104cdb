#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "rb/adf.hpp"
#include "rb/changepoint.hpp"
#include "rb/decompose.hpp"
#include "rb/errors.hpp"
#include "rb/fft.hpp"
#include "rb/stats.hpp"
#include "rb/timeseries.hpp"

namespace rb {

inline constexpr std::size_t kDescriptorDim = 6;

/**
 * Regime descriptor vector: six primary components plus the lag-1
 * autocorrelation needed by the rule-based selector.
 */
struct DescriptorVector {
    double r1_trend = 0.0;
    double r2_seasonality = 0.0;
    double r3_noise = 0.0;
    double r4_stationarity_evidence = 0.0;
    double r5_intermittency = 0.0;
    double r6_break_density = 0.0;
    double acf1 = 0.0;
    bool normalized = false;

    std::array<double, kDescriptorDim> components() const {
        return {r1_trend,
                r2_seasonality,
                r3_noise,
                r4_stationarity_evidence,
                r5_intermittency,
                r6_break_density};
    }

    void set_components(const std::array<double, kDescriptorDim>& c) {
        r1_trend = c[0];
        r2_seasonality = c[1];
        r3_noise = c[2];
        r4_stationarity_evidence = c[3];
        r5_intermittency = c[4];
        r6_break_density = c[5];
    }
};

inline const std::array<const char*, kDescriptorDim>& descriptor_names() {
    static const std::array<const char*, kDescriptorDim> names = {
        "r1_trend",        "r2_seasonality",    "r3_noise",
        "r4_stationarity_evidence", "r5_intermittency", "r6_break_density"};
    return names;
}

struct DescriptorConfig {
    std::optional<int> period;   // seasonal period m; falls back to the series hint
    double epsilon = 0.0;        // intermittency threshold; <= 0 means 1e-3 * std, floor 1e-8
    double cp_penalty = 0.0;     // <= 0 means the 3 * sigma^2 * log T default
    int adf_max_lag = 100;       // cap on the Schwert lag rule
    bool invert_r4 = false;      // report p_ADF instead of 1 - p_ADF
};

/// |OLS slope| over sample variance; 0 on a flat series.
inline double trend_strength(std::span<const double> x) {
    if (x.size() < 3) fail(ErrorCode::SeriesTooShort, "trend strength needs at least 3 points");
    const double var = stats::variance(x);
    if (var <= stats::kDegenerateTol) return 0.0;
    return std::abs(stats::fit_line(x).slope) / var;
}

/// Spectral concentration: largest periodogram bin over total power,
/// zero-frequency bin excluded.
inline double seasonality_strength(std::span<const double> x) {
    if (x.size() < 8) fail(ErrorCode::SeriesTooShort, "seasonality needs at least 8 points");
    if (stats::variance(x) <= stats::kDegenerateTol) return 0.0;
    const auto power = fft::periodogram(x);
    double total = 0.0;
    double peak = 0.0;
    for (double p : power) {
        total += p;
        peak = std::max(peak, p);
    }
    return total > 0.0 ? peak / total : 0.0;
}

/// Residual variance of the additive decomposition over total variance.
inline double noise_level(std::span<const double> x, std::optional<int> period) {
    if (x.size() < 5) fail(ErrorCode::SeriesTooShort, "noise level needs at least 5 points");
    const double var = stats::variance(x);
    if (var <= stats::kDegenerateTol) return 0.0;
    const auto d = decompose(x, period);
    return std::max(stats::variance(d.residual) / var, 0.0);
}

/// Fraction of observations whose magnitude falls below epsilon.
inline double intermittency(std::span<const double> x, double epsilon) {
    if (x.empty()) fail(ErrorCode::Empty, "intermittency of empty series");
    if (epsilon <= 0.0) epsilon = std::max(1e-3 * stats::stddev(x), 1e-8);
    std::size_t hits = 0;
    for (double v : x)
        if (std::abs(v) < epsilon) ++hits;
    return static_cast<double>(hits) / static_cast<double>(x.size());
}

/// Runs every descriptor on a gap-free series.
inline DescriptorVector extract_descriptors(const TimeSeries& series,
                                            const DescriptorConfig& config = {}) {
    const std::span<const double> x(series.values);
    const std::optional<int> period = config.period ? config.period : series.frequency_hint;

    DescriptorVector v;
    v.r1_trend = trend_strength(x);
    v.r2_seasonality = seasonality_strength(x);
    v.r3_noise = noise_level(x, period);
    const AdfResult adf = adf_test(x, config.adf_max_lag);
    v.r4_stationarity_evidence = config.invert_r4 ? adf.p_value : adf.r4;
    v.r5_intermittency = intermittency(x, config.epsilon);
    const auto breaks = structural_breaks(x, config.cp_penalty);
    v.r6_break_density =
        static_cast<double>(breaks.indices.size()) / static_cast<double>(series.size());
    v.acf1 = stats::acf1(x);
    v.normalized = false;
    return v;
}

/// Per-component (min, max) ranges fitted on a training collection.
struct DescriptorNormalizer {
    std::array<double, kDescriptorDim> min{};
    std::array<double, kDescriptorDim> max{};
};

inline DescriptorNormalizer fit_normalizer(std::span<const DescriptorVector> training) {
    if (training.empty()) fail(ErrorCode::EmptyTrainingSet, "no descriptor vectors to fit on");
    DescriptorNormalizer norm;
    norm.min.fill(std::numeric_limits<double>::infinity());
    norm.max.fill(-std::numeric_limits<double>::infinity());
    for (const auto& v : training) {
        const auto c = v.components();
        for (std::size_t i = 0; i < kDescriptorDim; ++i) {
            norm.min[i] = std::min(norm.min[i], c[i]);
            norm.max[i] = std::max(norm.max[i], c[i]);
        }
    }
    return norm;
}

/// Min-max maps each component into [0,1]; constant training components map
/// to 0 and out-of-range test values are clipped.
inline DescriptorVector apply_normalizer(const DescriptorVector& v,
                                         const DescriptorNormalizer& norm) {
    DescriptorVector out = v;
    auto c = v.components();
    for (std::size_t i = 0; i < kDescriptorDim; ++i) {
        const double range = norm.max[i] - norm.min[i];
        c[i] = range > 0.0 ? std::clamp((c[i] - norm.min[i]) / range, 0.0, 1.0) : 0.0;
    }
    out.set_components(c);
    out.normalized = true;
    return out;
}

} // namespace rb
