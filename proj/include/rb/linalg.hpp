#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rb/errors.hpp"

namespace rb::linalg {

/// In-place Cholesky factorization of a row-major k*k SPD matrix (lower
/// triangle). Returns false if the matrix is not positive definite.
inline bool cholesky_factor(std::vector<double>& a, std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
        double d = a[j * k + j];
        for (std::size_t p = 0; p < j; ++p) d -= a[j * k + p] * a[j * k + p];
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a[j * k + j] = ljj;
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = a[i * k + j];
            for (std::size_t p = 0; p < j; ++p) s -= a[i * k + p] * a[j * k + p];
            a[i * k + j] = s / ljj;
        }
    }
    return true;
}

/// Solves L L^T x = b given the factor from cholesky_factor.
inline std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t k,
                                          const std::vector<double>& b) {
    std::vector<double> x(b);
    for (std::size_t i = 0; i < k; ++i) {
        double s = x[i];
        for (std::size_t p = 0; p < i; ++p) s -= l[i * k + p] * x[p];
        x[i] = s / l[i * k + i];
    }
    for (std::size_t ii = k; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t p = ii + 1; p < k; ++p) s -= l[p * k + ii] * x[p];
        x[ii] = s / l[ii * k + ii];
    }
    return x;
}

struct OlsFit {
    std::vector<double> coef;
    std::vector<double> stderr;
    double sse = 0.0;
    std::size_t n_obs = 0;
};

/**
 * OLS of y on the given design columns via normal equations.
 * `jitter` is added to the Gram diagonal up front; if factorization still
 * fails, one retry with 1e-8 is attempted before SingularDesign.
 */
inline OlsFit ols(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
                  double jitter = 0.0, bool with_stderr = false) {
    const std::size_t k = columns.size();
    const std::size_t n = y.size();
    if (k == 0) fail(ErrorCode::InvalidArgument, "ols needs at least one column");
    for (const auto& c : columns)
        if (c.size() != n) fail(ErrorCode::LengthMismatch, "design column length mismatch");
    if (n <= k) fail(ErrorCode::SeriesTooShort, "ols needs more observations than coefficients");

    std::vector<double> gram(k * k, 0.0);
    std::vector<double> rhs(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += columns[i][t] * columns[j][t];
            gram[i * k + j] = gram[j * k + i] = s;
        }
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += columns[i][t] * y[t];
        rhs[i] = s;
    }

    auto try_factor = [&](double eps) {
        std::vector<double> l = gram;
        for (std::size_t i = 0; i < k; ++i) l[i * k + i] += eps;
        if (!cholesky_factor(l, k)) l.clear();
        return l;
    };

    double used_jitter = jitter;
    std::vector<double> l = try_factor(jitter);
    if (l.empty() && jitter < 1e-8) {
        used_jitter = 1e-8;
        l = try_factor(used_jitter);
    }
    if (l.empty()) fail(ErrorCode::SingularDesign, "Gram matrix not positive definite");

    OlsFit fit;
    fit.coef = cholesky_solve(l, k, rhs);
    fit.n_obs = n;
    for (std::size_t t = 0; t < n; ++t) {
        double pred = 0.0;
        for (std::size_t i = 0; i < k; ++i) pred += fit.coef[i] * columns[i][t];
        const double e = y[t] - pred;
        fit.sse += e * e;
    }

    if (with_stderr) {
        const double sigma2 = fit.sse / static_cast<double>(n - k);
        fit.stderr.resize(k);
        std::vector<double> e(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            // (G^-1)_ii = || L^-1 e_i ||^2
            std::fill(e.begin(), e.end(), 0.0);
            e[i] = 1.0;
            std::vector<double> z(k, 0.0);
            for (std::size_t r = 0; r < k; ++r) {
                double s = e[r];
                for (std::size_t p = 0; p < r; ++p) s -= l[r * k + p] * z[p];
                z[r] = s / (l[r * k + r]);
            }
            double g = 0.0;
            for (double v : z) g += v * v;
            fit.stderr[i] = std::sqrt(sigma2 * g);
        }
    }
    (void)used_jitter;
    return fit;
}

} // namespace rb::linalg
