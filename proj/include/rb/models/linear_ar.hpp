#pragma once

#include <deque>
#include <vector>

#include "rb/forecaster.hpp"
#include "rb/linalg.hpp"

namespace rb {

namespace detail {

/// Builds the lag design shared by the linear and forest regressors:
/// row t has features [x_{t-1}, ..., x_{t-p}] and target x_t.
struct LagTable {
    std::vector<std::vector<double>> rows; // each row: p lag features
    std::vector<double> targets;
};

inline LagTable build_lag_table(std::span<const double> x, int p) {
    LagTable table;
    const auto lags = static_cast<std::size_t>(p);
    for (std::size_t t = lags; t < x.size(); ++t) {
        std::vector<double> row(lags);
        for (std::size_t j = 0; j < lags; ++j) row[j] = x[t - 1 - j];
        table.rows.push_back(std::move(row));
        table.targets.push_back(x[t]);
    }
    return table;
}

} // namespace detail

/**
 * Autoregression on the last p values with an intercept, estimated by least
 * squares on the lag design. Multi-step forecasts are recursive: each
 * prediction is pushed onto the lag window for the next step.
 */
class LinearArForecaster final : public Forecaster {
public:
    explicit LinearArForecaster(int lags) : lags_(lags) {
        if (lags < 1) fail(ErrorCode::InvalidArgument, "lag window must be >= 1");
    }

    ModelId id() const override { return ModelId::Linear; }

    void fit(std::span<const double> train) override {
        const auto p = static_cast<std::size_t>(lags_);
        if (train.size() < p + 2)
            fail(ErrorCode::SeriesTooShort, "linear regression needs at least p + 2 observations");

        const auto table = detail::build_lag_table(train, lags_);
        const std::size_t n = table.rows.size();
        std::vector<std::vector<double>> columns(p + 1, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            columns[0][i] = 1.0;
            for (std::size_t j = 0; j < p; ++j) columns[j + 1][i] = table.rows[i][j];
        }
        coef_ = linalg::ols(columns, table.targets, kRidgeJitter).coef;
        window_.assign(train.end() - static_cast<std::ptrdiff_t>(p), train.end());
        fitted_ = true;
    }

    std::vector<double> predict(std::size_t horizon) const override {
        require_fitted();
        std::deque<double> window(window_.begin(), window_.end());
        std::vector<double> out;
        out.reserve(horizon);
        for (std::size_t h = 0; h < horizon; ++h) {
            double next = coef_[0];
            for (std::size_t j = 0; j < window.size(); ++j)
                next += coef_[j + 1] * window[window.size() - 1 - j];
            out.push_back(next);
            window.pop_front();
            window.push_back(next);
        }
        return out;
    }

    const std::vector<double>& coefficients() const { return coef_; }

    static constexpr double kRidgeJitter = 1e-8;

private:
    int lags_;
    std::vector<double> coef_;    // [intercept, lag1, ..., lagp]
    std::vector<double> window_;  // last p training values, oldest first
};

} // namespace rb
