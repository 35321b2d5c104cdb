#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "rb/errors.hpp"
#include "rb/stats.hpp"

namespace rb {

struct ChangePoints {
    std::vector<std::size_t> indices; // first index of each new segment, sorted
    double penalty = 0.0;
};

namespace detail {

class SegmentCost {
public:
    explicit SegmentCost(std::span<const double> x) : s1_(x.size() + 1, 0.0), s2_(x.size() + 1, 0.0) {
        for (std::size_t t = 0; t < x.size(); ++t) {
            s1_[t + 1] = s1_[t] + x[t];
            s2_[t + 1] = s2_[t] + x[t] * x[t];
        }
    }

    /// Within-segment squared error around the segment mean on [a, b).
    double operator()(std::size_t a, std::size_t b) const {
        const double n = static_cast<double>(b - a);
        const double s = s1_[b] - s1_[a];
        const double q = s2_[b] - s2_[a];
        return q - s * s / n;
    }

private:
    std::vector<double> s1_;
    std::vector<double> s2_;
};

inline void split_segment(const SegmentCost& cost, std::size_t a, std::size_t b, double penalty,
                          std::size_t min_segment, std::vector<std::size_t>& out) {
    if (b - a < 2 * min_segment) return;
    const double whole = cost(a, b);
    double best_gain = 0.0;
    std::size_t best_tau = 0;
    for (std::size_t tau = a + min_segment; tau + min_segment <= b; ++tau) {
        const double gain = whole - cost(a, tau) - cost(tau, b);
        if (gain > best_gain) {
            best_gain = gain;
            best_tau = tau;
        }
    }
    if (best_tau != 0 && best_gain > penalty) {
        split_segment(cost, a, best_tau, penalty, min_segment, out);
        out.push_back(best_tau);
        split_segment(cost, best_tau, b, penalty, min_segment, out);
    }
}

} // namespace detail

/**
 * Mean-shift change points by binary segmentation with an SSE cost.
 * penalty <= 0 selects the default 3 * sigma^2 * log T, where sigma^2 is the
 * difference-based noise variance estimate mean(dx^2)/2.
 */
inline ChangePoints structural_breaks(std::span<const double> x, double penalty = -1.0,
                                      std::size_t min_segment = 5) {
    const std::size_t n = x.size();
    if (n < 10) fail(ErrorCode::SeriesTooShort, "change-point scan needs at least 10 observations");

    if (penalty <= 0.0) {
        const auto dx = stats::diff(x);
        double s = 0.0;
        for (double v : dx) s += v * v;
        const double sigma2 = s / (2.0 * static_cast<double>(dx.size()));
        penalty = std::max(3.0 * sigma2 * std::log(static_cast<double>(n)), 1e-12);
    }

    detail::SegmentCost cost(x);
    ChangePoints result;
    result.penalty = penalty;
    detail::split_segment(cost, 0, n, penalty, min_segment, result.indices);
    std::sort(result.indices.begin(), result.indices.end());
    return result;
}

} // namespace rb
