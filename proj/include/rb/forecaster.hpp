#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rb/errors.hpp"

namespace rb {

/// Enumeration order doubles as the deterministic tie-break order everywhere
/// a tie on scores or metrics must be resolved.
enum class ModelId : int {
    Naive = 0,
    SeasonalNaive = 1,
    Linear = 2,
    Ets = 3,
    Arima = 4,
    RandomForest = 5,
};

inline constexpr std::array<ModelId, 6> kAllModels = {
    ModelId::Naive,  ModelId::SeasonalNaive, ModelId::Linear,
    ModelId::Ets,    ModelId::Arima,         ModelId::RandomForest,
};

inline const char* to_string(ModelId id) {
    switch (id) {
    case ModelId::Naive: return "Naive";
    case ModelId::SeasonalNaive: return "SeasonalNaive";
    case ModelId::Linear: return "Linear";
    case ModelId::Ets: return "ETS";
    case ModelId::Arima: return "ARIMA";
    case ModelId::RandomForest: return "RandomForest";
    }
    return "Unknown";
}

inline ModelId parse_model_id(const std::string& name) {
    for (ModelId id : kAllModels)
        if (name == to_string(id)) return id;
    fail(ErrorCode::InvalidArgument, "unknown model name '" + name + "'");
}

/**
 * Shared hyperparameters for the model zoo. One instance configures every
 * model; each model reads only the fields it understands.
 */
struct ModelConfig {
    int lag_window = 8;                 // p for Linear and RandomForest
    std::optional<int> seasonal_period; // m for SeasonalNaive and ETS
    int arima_max_p = 2;                // AR grid 0..arima_max_p
    int arima_max_q = 2;                // MA grid 0..arima_max_q
    int rf_trees = 100;
    int rf_depth = 8;
    std::uint64_t seed = 0;             // consumed by RandomForest only
};

/**
 * Uniform fit/predict contract. A fitted model is immutable: predict is
 * const, returns exactly `horizon` values, and repeated calls are identical.
 */
class Forecaster {
public:
    virtual ~Forecaster() = default;

    virtual ModelId id() const = 0;
    virtual void fit(std::span<const double> train) = 0;
    virtual std::vector<double> predict(std::size_t horizon) const = 0;

    std::vector<double> fit_predict(std::span<const double> train, std::size_t horizon) {
        fit(train);
        return predict(horizon);
    }

protected:
    void require_fitted() const {
        if (!fitted_) fail(ErrorCode::InvalidArgument, "predict called before fit");
    }

    bool fitted_ = false;
};

} // namespace rb
