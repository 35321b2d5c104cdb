#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rb/case_table.hpp"
#include "rb/errors.hpp"
#include "rb/metrics.hpp"
#include "rb/models/zoo.hpp"
#include "rb/splits.hpp"
#include "rb/timeseries.hpp"

namespace rb {

/**
 * Rejects any split layout under which a scored index could have been seen
 * during fitting: folds must train on a strict prefix and test on the
 * indices immediately after it.
 */
inline void audit_split_plan(const SplitPlan& plan, std::size_t series_length) {
    if (plan.series_length != series_length)
        fail(ErrorCode::InvalidArgument,
             "split plan was built for length " + std::to_string(plan.series_length) +
                 ", series has " + std::to_string(series_length));
    if (plan.folds.empty()) fail(ErrorCode::InvalidArgument, "split plan has no folds");
    for (const Fold& fold : plan.folds) {
        if (fold.train_end == 0)
            fail(ErrorCode::InvalidArgument, "fold with empty training window");
        if (fold.test_begin < fold.train_end)
            fail(ErrorCode::InvalidArgument,
                 "fold tests index " + std::to_string(fold.test_begin) +
                     " inside its own training window");
        if (fold.test_begin != fold.train_end)
            fail(ErrorCode::InvalidArgument, "fold leaves a gap between train and test");
        if (fold.test_end != fold.test_begin + plan.horizon)
            fail(ErrorCode::InvalidArgument, "fold test window is not exactly one horizon");
        if (fold.test_end > series_length)
            fail(ErrorCode::InvalidArgument, "fold tests past the end of the series");
    }
}

/**
 * Rolling-origin evaluation of one model on one series. Per fold: gaps are
 * forward-filled (a causal operation, so filling once up front leaks
 * nothing), the training window is z-normalized on its own statistics, the
 * model fits and predicts one horizon, and predictions are mapped back to
 * the original scale before scoring. Fold metrics are averaged with equal
 * weights; fit_seconds accumulates wall-clock fitting time.
 */
inline BacktestRecord backtest(const TimeSeries& series, ModelId model,
                               const ModelConfig& config, const SplitPlan& plan) {
    audit_split_plan(plan, series.size());
    const std::vector<double> filled = forward_fill(std::span<const double>(series.values));

    BacktestRecord record;
    record.dataset = series.name;
    record.horizon = static_cast<int>(plan.horizon);
    record.model_id = model;
    record.fold_count = static_cast<int>(plan.folds.size());

    double rmse_sum = 0.0;
    double mae_sum = 0.0;
    for (std::size_t k = 0; k < plan.folds.size(); ++k) {
        const Fold& fold = plan.folds[k];
        try {
            const std::span<const double> train(filled.data(), fold.train_end);
            NormStats stats = fit_norm_stats(train);
            if (stats.degenerate()) stats.std = 1.0; // constant window: shift only
            const std::vector<double> z_train = z_normalize(train, stats);

            auto forecaster = make_forecaster(model, config, series.frequency_hint);
            const auto t0 = std::chrono::steady_clock::now();
            forecaster->fit(z_train);
            const auto t1 = std::chrono::steady_clock::now();
            record.fit_seconds += std::chrono::duration<double>(t1 - t0).count();

            const std::vector<double> z_pred =
                forecaster->predict(plan.horizon);
            const std::vector<double> predicted = z_denormalize(z_pred, stats);
            const std::span<const double> actual(filled.data() + fold.test_begin,
                                                 plan.horizon);

            const double fold_rmse = rmse(actual, predicted);
            const double fold_mae = mae(actual, predicted);
            if (fold_rmse + 1e-12 < fold_mae)
                fail(ErrorCode::InvalidArgument,
                     "quadratic mean fell below absolute mean; metrics are corrupted");
            rmse_sum += fold_rmse;
            mae_sum += fold_mae;
        } catch (const Error& e) {
            fail(e.code(), "fold " + std::to_string(k + 1) + "/" +
                               std::to_string(plan.folds.size()) + " of " +
                               std::string(to_string(model)) + " on '" + series.name +
                               "': " + e.what());
        }
    }
    record.rmse = rmse_sum / static_cast<double>(plan.folds.size());
    record.mae = mae_sum / static_cast<double>(plan.folds.size());
    return record;
}

/// One point of a hyperparameter grid.
struct ModelCandidate {
    ModelId model = ModelId::Naive;
    ModelConfig config;
};

struct GridSearchResult {
    ModelId model = ModelId::Naive;
    ModelConfig config;
    BacktestRecord record;
    std::vector<std::string> diagnostics; // one entry per skipped candidate
};

/**
 * Backtests every candidate and returns the one with the lowest RMSE (ties
 * break toward the lower model id, then grid order). Failing candidates are
 * skipped with a diagnostic; only an empty grid or a fully failing one is an
 * error.
 */
inline GridSearchResult grid_search(const TimeSeries& series,
                                    const std::vector<ModelCandidate>& grid,
                                    const SplitPlan& plan) {
    if (grid.empty()) fail(ErrorCode::InvalidArgument, "hyperparameter grid is empty");

    GridSearchResult result;
    bool found = false;
    for (const ModelCandidate& candidate : grid) {
        try {
            const BacktestRecord record = backtest(series, candidate.model,
                                                   candidate.config, plan);
            const bool better =
                !found || record.rmse < result.record.rmse ||
                (record.rmse == result.record.rmse && candidate.model < result.model);
            if (better) {
                result.model = candidate.model;
                result.config = candidate.config;
                result.record = record;
                found = true;
            }
        } catch (const Error& e) {
            result.diagnostics.emplace_back(e.what());
        }
    }
    if (!found)
        fail(ErrorCode::JobFailure, "every candidate failed; first diagnostic: " +
                                        (result.diagnostics.empty()
                                             ? std::string("none")
                                             : result.diagnostics.front()));
    return result;
}

/**
 * Grid search over precomputed records for a single case: returns the record
 * with the lowest RMSE, ties toward the lower model id. This is the
 * empirical "best model" oracle used to judge selections.
 */
inline BacktestRecord best_record(const std::vector<BacktestRecord>& case_records) {
    if (case_records.empty())
        fail(ErrorCode::InvalidArgument, "no records to choose a best model from");
    const BacktestRecord* best = &case_records.front();
    for (const BacktestRecord& rec : case_records) {
        if (rec.rmse < best->rmse ||
            (rec.rmse == best->rmse && rec.model_id < best->model_id))
            best = &rec;
    }
    return *best;
}

} // namespace rb
