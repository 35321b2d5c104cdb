#pragma once

#include <cmath>
#include <span>

#include "rb/errors.hpp"

namespace rb {

namespace detail {

inline void check_metric_inputs(std::span<const double> actual,
                                std::span<const double> predicted) {
    if (actual.size() != predicted.size())
        fail(ErrorCode::LengthMismatch, "actual has " + std::to_string(actual.size()) +
                                            " values, predicted has " +
                                            std::to_string(predicted.size()));
    if (actual.empty()) fail(ErrorCode::Empty, "cannot score empty forecasts");
}

} // namespace detail

/// Root mean squared error between an actual and a predicted vector.
inline double rmse(std::span<const double> actual, std::span<const double> predicted) {
    detail::check_metric_inputs(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(actual.size()));
}

/// Mean absolute error between an actual and a predicted vector.
inline double mae(std::span<const double> actual, std::span<const double> predicted) {
    detail::check_metric_inputs(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(actual[i] - predicted[i]);
    return s / static_cast<double>(actual.size());
}

} // namespace rb
