#pragma once

#include <cmath>
#include <cstdlib>

#include "rb/errors.hpp"

namespace rb::special {

namespace detail {

/// Regularized lower incomplete gamma P(s, x) by power series; converges
/// quickly for x < s + 1.
inline double gamma_p_series(double s, double x) {
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

/// Regularized upper incomplete gamma Q(s, x) by Lentz's continued fraction;
/// converges quickly for x >= s + 1.
inline double gamma_q_fraction(double s, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

} // namespace detail

/**
 * Regularized upper incomplete gamma Q(s, x) = Γ(s, x) / Γ(s), evaluated by
 * the series for x < s+1 and by the continued fraction otherwise. Absolute
 * accuracy is well below 1e-10 over the tested range.
 */
inline double gamma_q(double s, double x) {
    if (s <= 0.0) fail(ErrorCode::InvalidArgument, "gamma_q requires s > 0");
    if (x < 0.0) fail(ErrorCode::InvalidArgument, "gamma_q requires x >= 0");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - detail::gamma_p_series(s, x);
    return detail::gamma_q_fraction(s, x);
}

/// Regularized lower incomplete gamma P(s, x) = 1 - Q(s, x).
inline double gamma_p(double s, double x) { return 1.0 - gamma_q(s, x); }

/// Survival function of the chi-square distribution with `dof` degrees of
/// freedom: P(X > x) = Q(dof/2, x/2).
inline double chi_square_sf(double x, int dof) {
    if (dof < 1) fail(ErrorCode::InvalidArgument, "chi_square_sf requires dof >= 1");
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * static_cast<double>(dof), 0.5 * x);
}

} // namespace rb::special
