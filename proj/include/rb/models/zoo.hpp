#pragma once

#include <memory>

#include "rb/forecaster.hpp"
#include "rb/models/arima.hpp"
#include "rb/models/ets.hpp"
#include "rb/models/linear_ar.hpp"
#include "rb/models/naive.hpp"
#include "rb/models/random_forest.hpp"
#include "rb/models/seasonal_naive.hpp"

namespace rb {

/// Instantiates a model from the shared configuration. For the seasonal
/// models a missing configured period falls back to `fallback_period`
/// (usually the series frequency hint), then to 1 (SeasonalNaive) or
/// nonseasonal operation (ETS).
inline std::unique_ptr<Forecaster> make_forecaster(ModelId id, const ModelConfig& config,
                                                   std::optional<int> fallback_period =
                                                       std::nullopt) {
    const std::optional<int> period =
        config.seasonal_period ? config.seasonal_period : fallback_period;
    switch (id) {
    case ModelId::Naive:
        return std::make_unique<NaiveForecaster>();
    case ModelId::SeasonalNaive:
        return std::make_unique<SeasonalNaiveForecaster>(period.value_or(1));
    case ModelId::Linear:
        return std::make_unique<LinearArForecaster>(config.lag_window);
    case ModelId::Ets:
        return std::make_unique<EtsForecaster>(period && *period >= 2 ? period : std::nullopt);
    case ModelId::Arima:
        return std::make_unique<ArimaForecaster>(config.arima_max_p, config.arima_max_q);
    case ModelId::RandomForest:
        return std::make_unique<RandomForestForecaster>(config.lag_window, config.rf_trees,
                                                        config.rf_depth, config.seed);
    }
    fail(ErrorCode::InvalidArgument, "unhandled model id");
}

} // namespace rb
