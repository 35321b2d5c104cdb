#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "rb/adf.hpp"
#include "rb/forecaster.hpp"
#include "rb/optimize.hpp"
#include "rb/stats.hpp"

namespace rb {

namespace detail {

/// Reflects any root of 1 + t1*z + t2*z^2 that lies inside the unit circle
/// to its reciprocal, returning coefficients of an invertible polynomial.
inline void reflect_ma_roots(std::vector<double>& theta) {
    if (theta.empty()) return;
    if (theta.size() == 1) {
        if (std::abs(theta[0]) > 1.0) theta[0] = 1.0 / theta[0];
        return;
    }
    // Roots of t2*z^2 + t1*z + 1 = 0.
    const double t1 = theta[0], t2 = theta[1];
    if (std::abs(t2) < 1e-12) {
        std::vector<double> one = {t1};
        reflect_ma_roots(one);
        theta[0] = one[0];
        theta[1] = 0.0;
        return;
    }
    const std::complex<double> disc = std::sqrt(std::complex<double>(t1 * t1 - 4.0 * t2, 0.0));
    std::complex<double> r1 = (-t1 + disc) / (2.0 * t2);
    std::complex<double> r2 = (-t1 - disc) / (2.0 * t2);
    // The polynomial in root form is (1 - z/r1)(1 - z/r2); invertibility
    // requires |r| > 1, so reflect the offenders.
    if (std::abs(r1) < 1.0) r1 = 1.0 / std::conj(r1);
    if (std::abs(r2) < 1.0) r2 = 1.0 / std::conj(r2);
    const std::complex<double> inv_prod = 1.0 / (r1 * r2);
    const std::complex<double> sum = 1.0 / r1 + 1.0 / r2;
    theta[0] = -sum.real();
    theta[1] = inv_prod.real();
}

} // namespace detail

/**
 * ARIMA(p, d, q) with d in {0, 1} chosen by the unit-root test, (p, q)
 * searched over a small grid by AIC, and coefficients estimated by
 * conditional-sum-of-squares minimization. When d = 0 the series is
 * mean-centered and the mean restored on forecasts; when d = 1 no constant
 * is fitted, so the (0,1,0) candidate reduces exactly to the naive forecast.
 */
class ArimaForecaster final : public Forecaster {
public:
    explicit ArimaForecaster(int max_p = 2, int max_q = 2) : max_p_(max_p), max_q_(max_q) {
        if (max_p < 0 || max_q < 0)
            fail(ErrorCode::InvalidArgument, "order grid bounds must be non-negative");
    }

    ModelId id() const override { return ModelId::Arima; }

    void fit(std::span<const double> train) override {
        if (train.size() < 30) fail(ErrorCode::SeriesTooShort, "arima needs at least 30 observations");
        last_value_ = train.back();

        // A constant history carries no ARMA structure; forecast flat.
        if (stats::variance_population(train) <= stats::kDegenerateTol) {
            degenerate_ = true;
            fitted_ = true;
            return;
        }
        degenerate_ = false;

        d_ = adf_test(train).p_value >= 0.05 ? 1 : 0;
        std::vector<double> w;
        if (d_ == 1) {
            w.reserve(train.size() - 1);
            for (std::size_t t = 1; t < train.size(); ++t) w.push_back(train[t] - train[t - 1]);
            mean_ = 0.0;
        } else {
            w.assign(train.begin(), train.end());
            mean_ = stats::mean(w);
            for (double& v : w) v -= mean_;
        }

        double best_aic = std::numeric_limits<double>::infinity();
        Candidate best;
        bool found = false;
        for (int p = 0; p <= max_p_; ++p)
            for (int q = 0; q <= max_q_; ++q) {
                const Candidate cand = fit_candidate(w, p, q);
                // Reject failed fits (+inf / NaN); -inf marks an exact fit.
                if (!(cand.aic < std::numeric_limits<double>::infinity())) continue;
                // Prefer converged fits; among equals, lowest AIC wins.
                const bool better =
                    !found || (cand.converged && !best.converged) ||
                    (cand.converged == best.converged && cand.aic < best_aic);
                if (better) {
                    best_aic = cand.aic;
                    best = cand;
                    found = true;
                }
            }

        if (!found) {
            // Every candidate failed; fall back to AR(1) on the work series.
            best = fallback_ar1(w);
        }

        phi_ = best.phi;
        theta_ = best.theta;
        converged_ = best.converged;

        // Residual pass over the full work series for forecast seeding.
        work_ = w;
        residuals_ = residual_pass(w, phi_, theta_);
        fitted_ = true;
    }

    std::vector<double> predict(std::size_t horizon) const override {
        require_fitted();
        if (degenerate_) return std::vector<double>(horizon, last_value_);

        const std::size_t n = work_.size();
        std::vector<double> extended = work_;
        std::vector<double> errs = residuals_;
        extended.reserve(n + horizon);
        errs.reserve(n + horizon);

        std::vector<double> fw(horizon);
        for (std::size_t h = 0; h < horizon; ++h) {
            double value = 0.0;
            for (std::size_t i = 0; i < phi_.size(); ++i) {
                const std::ptrdiff_t idx =
                    static_cast<std::ptrdiff_t>(n + h) - 1 - static_cast<std::ptrdiff_t>(i);
                if (idx >= 0) value += phi_[i] * extended[static_cast<std::size_t>(idx)];
            }
            for (std::size_t j = 0; j < theta_.size(); ++j) {
                const std::ptrdiff_t idx =
                    static_cast<std::ptrdiff_t>(n + h) - 1 - static_cast<std::ptrdiff_t>(j);
                if (idx >= 0 && static_cast<std::size_t>(idx) < n + h)
                    value += theta_[j] * errs[static_cast<std::size_t>(idx)];
            }
            extended.push_back(value);
            errs.push_back(0.0); // future shocks have zero expectation
            fw[h] = value;
        }

        std::vector<double> out(horizon);
        if (d_ == 1) {
            double acc = last_value_;
            for (std::size_t h = 0; h < horizon; ++h) {
                acc += fw[h];
                out[h] = acc;
            }
        } else {
            for (std::size_t h = 0; h < horizon; ++h) out[h] = fw[h] + mean_;
        }
        return out;
    }

    int d() const { return d_; }
    const std::vector<double>& ar_coefficients() const { return phi_; }
    const std::vector<double>& ma_coefficients() const { return theta_; }
    bool converged() const { return converged_; }

private:
    struct Candidate {
        std::vector<double> phi;
        std::vector<double> theta;
        double aic = std::numeric_limits<double>::infinity();
        bool converged = false;
    };

    /// Conditional residuals with zero-initialized history.
    static std::vector<double> residual_pass(const std::vector<double>& z,
                                             const std::vector<double>& phi,
                                             const std::vector<double>& theta) {
        std::vector<double> e(z.size(), 0.0);
        for (std::size_t t = 0; t < z.size(); ++t) {
            double pred = 0.0;
            for (std::size_t i = 0; i < phi.size(); ++i)
                if (t >= i + 1) pred += phi[i] * z[t - 1 - i];
            for (std::size_t j = 0; j < theta.size(); ++j)
                if (t >= j + 1) pred += theta[j] * e[t - 1 - j];
            e[t] = z[t] - pred;
        }
        return e;
    }

    /// CSS over a conditioning window common to every candidate so AIC
    /// values are comparable across orders.
    double css(const std::vector<double>& z, const std::vector<double>& phi,
               const std::vector<double>& theta) const {
        const auto skip = static_cast<std::size_t>(max_p_);
        const auto e = residual_pass(z, phi, theta);
        double sse = 0.0;
        for (std::size_t t = skip; t < e.size(); ++t) sse += e[t] * e[t];
        return sse;
    }

    Candidate fit_candidate(const std::vector<double>& z, int p, int q) const {
        const auto n_eff = static_cast<double>(z.size() - static_cast<std::size_t>(max_p_));
        Candidate cand;

        auto unpack = [&](const std::vector<double>& x) {
            std::vector<double> phi(x.begin(), x.begin() + p);
            std::vector<double> theta(x.begin() + p, x.end());
            detail::reflect_ma_roots(theta);
            return std::pair(phi, theta);
        };

        if (p + q == 0) {
            cand.phi = {};
            cand.theta = {};
            cand.converged = true;
            const double sse = css(z, cand.phi, cand.theta);
            cand.aic = n_eff * std::log(sse / n_eff) + 2.0;
            return cand;
        }

        auto objective = [&](const std::vector<double>& x) {
            auto [phi, theta] = unpack(x);
            const double sse = css(z, phi, theta);
            return std::isfinite(sse) ? sse : std::numeric_limits<double>::max();
        };

        const auto opt = nelder_mead(objective, std::vector<double>(p + q, 0.0), 0.1, 1e-10,
                                     500 * (p + q));
        auto [phi, theta] = unpack(opt.x);
        cand.phi = std::move(phi);
        cand.theta = std::move(theta);
        cand.converged = opt.converged && std::isfinite(opt.value);
        const double sse = css(z, cand.phi, cand.theta);
        if (sse <= 0.0 || !std::isfinite(sse)) {
            // Exact fit: AIC of a zero-residual model; guard the log.
            cand.aic = sse == 0.0 ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
        } else {
            cand.aic = n_eff * std::log(sse / n_eff) + 2.0 * static_cast<double>(p + q + 1);
        }
        return cand;
    }

    static Candidate fallback_ar1(const std::vector<double>& z) {
        Candidate cand;
        double num = 0.0, den = 0.0;
        for (std::size_t t = 1; t < z.size(); ++t) {
            num += z[t] * z[t - 1];
            den += z[t - 1] * z[t - 1];
        }
        cand.phi = {den > 0.0 ? num / den : 0.0};
        cand.theta = {};
        cand.converged = false;
        cand.aic = 0.0;
        return cand;
    }

    int max_p_;
    int max_q_;
    int d_ = 0;
    double mean_ = 0.0;
    double last_value_ = 0.0;
    bool degenerate_ = false;
    bool converged_ = true;
    std::vector<double> phi_;
    std::vector<double> theta_;
    std::vector<double> work_;      // differenced (d=1) or centered (d=0) series
    std::vector<double> residuals_; // conditional residuals over work_
};

} // namespace rb
