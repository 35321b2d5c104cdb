#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rb/errors.hpp"

namespace rb {

/// One rolling-origin fold: train on [0, train_end), test on the next
/// `horizon` indices.
struct Fold {
    std::size_t train_end = 0;
    std::size_t test_begin = 0;
    std::size_t test_end = 0; // exclusive
};

struct SplitPlan {
    std::size_t series_length = 0;
    std::size_t horizon = 0;
    std::vector<Fold> folds;
};

/**
 * Expanding-window rolling-origin layout: test windows of exactly H,
 * anchored so the union of test windows is contiguous and ends at T.
 * Fold k (0-based) trains on [0, T - (n_folds - k) * H).
 */
inline SplitPlan rolling_origin_splits(std::size_t length, std::size_t horizon,
                                       std::size_t n_folds, std::size_t min_train) {
    if (horizon == 0 || n_folds == 0)
        fail(ErrorCode::InvalidArgument, "horizon and fold count must be positive");
    if (length < min_train + n_folds * horizon)
        fail(ErrorCode::SeriesTooShort,
             "need at least " + std::to_string(min_train + n_folds * horizon) +
                 " observations, have " + std::to_string(length));

    SplitPlan plan;
    plan.series_length = length;
    plan.horizon = horizon;
    plan.folds.reserve(n_folds);
    for (std::size_t k = 0; k < n_folds; ++k) {
        Fold fold;
        fold.train_end = length - (n_folds - k) * horizon;
        fold.test_begin = fold.train_end;
        fold.test_end = fold.test_begin + horizon;
        plan.folds.push_back(fold);
    }
    return plan;
}

} // namespace rb
