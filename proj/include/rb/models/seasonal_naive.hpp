#pragma once

#include <vector>

#include "rb/forecaster.hpp"

namespace rb {

/// Repeats the last observed season: forecast h is the value one whole
/// number of periods back, i.e. train[T - m + ((h-1) mod m)].
class SeasonalNaiveForecaster final : public Forecaster {
public:
    explicit SeasonalNaiveForecaster(int period) : period_(period) {
        if (period < 1) fail(ErrorCode::InvalidArgument, "seasonal period must be >= 1");
    }

    ModelId id() const override { return ModelId::SeasonalNaive; }

    void fit(std::span<const double> train) override {
        const auto m = static_cast<std::size_t>(period_);
        if (train.size() < m)
            fail(ErrorCode::SeriesTooShort, "seasonal naive needs at least one full period");
        season_.assign(train.end() - static_cast<std::ptrdiff_t>(m), train.end());
        fitted_ = true;
    }

    std::vector<double> predict(std::size_t horizon) const override {
        require_fitted();
        std::vector<double> out(horizon);
        for (std::size_t h = 0; h < horizon; ++h) out[h] = season_[h % season_.size()];
        return out;
    }

private:
    int period_;
    std::vector<double> season_;
};

} // namespace rb
