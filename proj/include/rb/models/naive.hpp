#pragma once

#include "rb/forecaster.hpp"

namespace rb {

/// Repeats the last training observation for every step of the horizon.
class NaiveForecaster final : public Forecaster {
public:
    ModelId id() const override { return ModelId::Naive; }

    void fit(std::span<const double> train) override {
        if (train.empty()) fail(ErrorCode::EmptyTrain, "naive needs at least one observation");
        last_ = train.back();
        fitted_ = true;
    }

    std::vector<double> predict(std::size_t horizon) const override {
        require_fitted();
        return std::vector<double>(horizon, last_);
    }

private:
    double last_ = 0.0;
};

} // namespace rb
