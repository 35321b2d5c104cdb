#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rb/errors.hpp"
#include "rb/stats.hpp"

namespace rb {

/// Missing observations in raw (pre-preprocessing) series are stored as NaN.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

/**
 * Univariate series with integer timestamps (epoch seconds or plain index).
 * Timestamps are strictly increasing; values may contain NaN gaps until
 * forward_fill has been applied.
 */
struct TimeSeries {
    std::string name;
    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
    std::optional<int> frequency_hint; // seasonal period m, when known

    std::size_t size() const { return values.size(); }

    bool has_missing() const {
        for (double v : values)
            if (is_missing(v)) return true;
        return false;
    }

    /// Builds a series over the index 0..n-1.
    static TimeSeries from_values(std::string name, std::vector<double> values,
                                  std::optional<int> frequency_hint = std::nullopt) {
        TimeSeries ts;
        ts.name = std::move(name);
        ts.timestamps.resize(values.size());
        std::iota(ts.timestamps.begin(), ts.timestamps.end(), std::int64_t{0});
        ts.values = std::move(values);
        ts.frequency_hint = frequency_hint;
        return ts;
    }

    void validate() const {
        if (timestamps.size() != values.size())
            fail(ErrorCode::LengthMismatch, "timestamps and values differ in length");
        if (values.empty()) fail(ErrorCode::Empty, "series '" + name + "' is empty");
        for (std::size_t i = 1; i < timestamps.size(); ++i)
            if (timestamps[i] <= timestamps[i - 1])
                fail(ErrorCode::DuplicateTimestamp,
                     "timestamps not strictly increasing at row " + std::to_string(i));
        if (frequency_hint && *frequency_hint < 1)
            fail(ErrorCode::InvalidArgument, "frequency_hint must be positive");
    }
};

/// Fills gaps with the most recent observed value; a leading gap is
/// back-filled from the first observation.
inline std::vector<double> forward_fill(std::span<const double> values) {
    std::size_t first = values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!is_missing(values[i])) {
            first = i;
            break;
        }
    }
    if (first == values.size()) fail(ErrorCode::AllMissing, "every value is missing");

    std::vector<double> out(values.begin(), values.end());
    for (std::size_t i = 0; i < first; ++i) out[i] = values[first];
    double last = values[first];
    for (std::size_t i = first; i < out.size(); ++i) {
        if (is_missing(out[i]))
            out[i] = last;
        else
            last = out[i];
    }
    return out;
}

inline TimeSeries forward_fill(const TimeSeries& series) {
    TimeSeries out = series;
    out.values = forward_fill(std::span<const double>(series.values));
    return out;
}

/// Normalization statistics; std is the population standard deviation of the
/// window the stats were fitted on (training observations only).
struct NormStats {
    double mean = 0.0;
    double std = 1.0;

    bool degenerate() const { return std <= stats::kDegenerateTol; }
};

inline NormStats fit_norm_stats(std::span<const double> values) {
    if (values.empty()) fail(ErrorCode::Empty, "cannot fit normalization on empty window");
    return {stats::mean(values), stats::stddev_population(values)};
}

inline std::vector<double> z_normalize(std::span<const double> values, const NormStats& s) {
    if (s.degenerate())
        fail(ErrorCode::DegenerateSeries, "z-normalization with zero-variance stats");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - s.mean) / s.std;
    return out;
}

inline std::vector<double> z_denormalize(std::span<const double> values, const NormStats& s) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * s.std + s.mean;
    return out;
}

inline TimeSeries z_normalize(const TimeSeries& series, const NormStats& s) {
    TimeSeries out = series;
    out.values = z_normalize(std::span<const double>(series.values), s);
    return out;
}

} // namespace rb
