#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "rb/forecaster.hpp"
#include "rb/stats.hpp"

namespace rb {

/**
 * Additive exponential smoothing: Holt's linear trend, extended with an
 * additive seasonal component when a period is supplied. Smoothing weights
 * are chosen by one-step in-sample SSE over a coarse grid, then refined once
 * by a half-step local search around the grid winner.
 */
class EtsForecaster final : public Forecaster {
public:
    explicit EtsForecaster(std::optional<int> period = std::nullopt) : period_(period) {
        if (period && *period < 2)
            fail(ErrorCode::InvalidArgument, "seasonal period must be >= 2 when given");
    }

    ModelId id() const override { return ModelId::Ets; }

    void fit(std::span<const double> train) override {
        if (train.size() < 10) fail(ErrorCode::SeriesTooShort, "ets needs at least 10 observations");
        const std::size_t m = period_ ? static_cast<std::size_t>(*period_) : 0;
        if (m > 0 && train.size() < 2 * m)
            fail(ErrorCode::SeriesTooShort, "seasonal ets needs at least two full periods");

        double best = std::numeric_limits<double>::infinity();
        Params best_params{0.5, 0.5, 0.5};
        for (double a = 0.05; a < 0.951; a += 0.05)
            for (double b = 0.05; b < 0.951; b += 0.05) {
                if (m == 0) {
                    consider(train, m, {a, b, 0.0}, best, best_params);
                } else {
                    for (double g = 0.05; g < 0.951; g += 0.05)
                        consider(train, m, {a, b, g}, best, best_params);
                }
            }
        // One refinement pass: half-step neighbourhood of the grid winner.
        for (double da : {-0.025, 0.0, 0.025})
            for (double db : {-0.025, 0.0, 0.025}) {
                if (m == 0) {
                    consider(train, m, best_params.offset(da, db, 0.0), best, best_params);
                } else {
                    for (double dg : {-0.025, 0.0, 0.025})
                        consider(train, m, best_params.offset(da, db, dg), best, best_params);
                }
            }

        state_ = run(train, m, best_params).state;
        params_ = best_params;
        season_length_ = m;
        fitted_ = true;
    }

    std::vector<double> predict(std::size_t horizon) const override {
        require_fitted();
        std::vector<double> out(horizon);
        for (std::size_t h = 0; h < horizon; ++h) {
            double value = state_.level + static_cast<double>(h + 1) * state_.trend;
            if (season_length_ > 0)
                value += state_.season[(state_.phase + h) % season_length_];
            out[h] = value;
        }
        return out;
    }

    double alpha() const { return params_.alpha; }
    double beta() const { return params_.beta; }
    double gamma() const { return params_.gamma; }

private:
    struct Params {
        double alpha, beta, gamma;

        Params offset(double da, double db, double dg) const {
            auto clip = [](double v) { return std::min(std::max(v, 0.01), 0.99); };
            return {clip(alpha + da), clip(beta + db), clip(gamma + dg)};
        }
    };

    struct State {
        double level = 0.0;
        double trend = 0.0;
        std::vector<double> season; // length m, indexed by phase
        std::size_t phase = 0;      // phase of the first forecast step
    };

    struct RunResult {
        double sse = 0.0;
        State state;
    };

    /// One-step-ahead pass over the series from the initialized state.
    static RunResult run(std::span<const double> x, std::size_t m, const Params& p) {
        RunResult r;
        std::size_t start = 0;
        if (m == 0) {
            // Level/trend seeded from the first two points; the state then
            // describes time t=1, so the pass begins forecasting at t=2.
            r.state.level = x[1];
            r.state.trend = x[1] - x[0];
            start = 2;
        } else {
            double first = 0.0, second = 0.0;
            for (std::size_t i = 0; i < m; ++i) first += x[i];
            for (std::size_t i = m; i < 2 * m; ++i) second += x[i];
            first /= static_cast<double>(m);
            second /= static_cast<double>(m);
            r.state.level = first;
            r.state.trend = (second - first) / static_cast<double>(m);
            r.state.season.resize(m);
            for (std::size_t i = 0; i < m; ++i) r.state.season[i] = x[i] - first;
            start = m;
        }

        for (std::size_t t = start; t < x.size(); ++t) {
            const double seasonal = m > 0 ? r.state.season[t % m] : 0.0;
            const double forecast = r.state.level + r.state.trend + seasonal;
            const double err = x[t] - forecast;
            r.sse += err * err;

            const double prev_level = r.state.level;
            r.state.level = p.alpha * (x[t] - seasonal) + (1.0 - p.alpha) * (prev_level + r.state.trend);
            r.state.trend = p.beta * (r.state.level - prev_level) + (1.0 - p.beta) * r.state.trend;
            if (m > 0)
                r.state.season[t % m] =
                    p.gamma * (x[t] - r.state.level) + (1.0 - p.gamma) * seasonal;
        }
        r.state.phase = m > 0 ? x.size() % m : 0;
        return r;
    }

    void consider(std::span<const double> x, std::size_t m, const Params& p, double& best,
                  Params& best_params) const {
        const double sse = run(x, m, p).sse;
        if (sse < best) {
            best = sse;
            best_params = p;
        }
    }

    std::optional<int> period_;
    Params params_{0.5, 0.5, 0.5};
    State state_;
    std::size_t season_length_ = 0;
};

} // namespace rb
