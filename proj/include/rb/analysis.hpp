#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "rb/case_table.hpp"
#include "rb/errors.hpp"
#include "rb/selector.hpp"
#include "rb/special.hpp"

namespace rb {

/// Ascending 1-based ranks of a metric row; tied values share the average of
/// the ranks they span.
inline std::vector<double> average_ranks(std::span<const double> row) {
    const std::size_t k = row.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });

    std::vector<double> ranks(k, 0.0);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
        // positions i..j (0-based) share the average of ranks i+1..j+1
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
        i = j + 1;
    }
    return ranks;
}

/// Per-case ascending ranks (average ties) for a complete table.
inline std::vector<std::vector<double>> case_ranks(const CaseTable& table) {
    table.require_complete();
    std::vector<std::vector<double>> out;
    out.reserve(table.n_cases());
    for (const auto& row : table.values) out.push_back(average_ranks(row));
    return out;
}

/**
 * Divides each row by its row minimum so the best model per case scores
 * exactly 1. A row whose minimum is 0 keeps the zero cells at 1 and flags
 * every other cell as +infinity rather than failing the whole analysis.
 */
inline CaseTable relative_rmse(const CaseTable& table) {
    table.require_complete();
    CaseTable out = table;
    for (auto& row : out.values) {
        const double best = *std::min_element(row.begin(), row.end());
        if (best == 0.0) {
            for (double& v : row)
                v = (v == 0.0) ? 1.0 : std::numeric_limits<double>::infinity();
        } else {
            for (double& v : row) v /= best;
        }
    }
    return out;
}

/// Per-horizon mean of each model's relative RMSE; rows follow the sorted
/// order of the horizons present in the table.
struct HorizonProfile {
    std::vector<int> horizons;
    std::vector<ModelId> models;
    std::vector<std::vector<double>> mean_relative; // [horizon][model]
};

inline HorizonProfile horizon_profile(const CaseTable& table) {
    const CaseTable rel = relative_rmse(table);
    HorizonProfile profile;
    profile.models = rel.models;
    for (const auto& id : rel.cases)
        if (std::find(profile.horizons.begin(), profile.horizons.end(), id.horizon) ==
            profile.horizons.end())
            profile.horizons.push_back(id.horizon);
    std::sort(profile.horizons.begin(), profile.horizons.end());

    for (int h : profile.horizons) {
        std::vector<double> sums(rel.n_models(), 0.0);
        std::size_t n = 0;
        for (std::size_t i = 0; i < rel.n_cases(); ++i) {
            if (rel.cases[i].horizon != h) continue;
            for (std::size_t j = 0; j < rel.n_models(); ++j) sums[j] += rel.values[i][j];
            ++n;
        }
        for (double& s : sums) s /= static_cast<double>(n);
        profile.mean_relative.push_back(std::move(sums));
    }
    return profile;
}

struct WinMatrix {
    std::vector<ModelId> models;
    std::vector<std::vector<double>> win; // win[i][j]: fraction of cases i beats j
};

/// Fraction of cases in which the row model's metric is strictly lower than
/// the column model's; ties award 0.5 to each side and the diagonal is 0.5.
inline WinMatrix pairwise_win_matrix(const CaseTable& table) {
    table.require_complete();
    const std::size_t k = table.n_models();
    const double n = static_cast<double>(table.n_cases());
    WinMatrix wm;
    wm.models = table.models;
    wm.win.assign(k, std::vector<double>(k, 0.5));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            double wins = 0.0;
            for (const auto& row : table.values) {
                if (row[i] < row[j])
                    wins += 1.0;
                else if (row[i] == row[j])
                    wins += 0.5;
            }
            wm.win[i][j] = wins / n;
            wm.win[j][i] = 1.0 - wm.win[i][j];
        }
    }
    return wm;
}

/// Population variance of each model's per-case rank; high values mean the
/// model's standing is unstable across cases.
inline std::vector<double> rank_variance(const CaseTable& table) {
    const auto ranks = case_ranks(table);
    const std::size_t k = table.n_models();
    const double n = static_cast<double>(ranks.size());
    std::vector<double> out(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double mean = 0.0;
        for (const auto& row : ranks) mean += row[j];
        mean /= n;
        double ss = 0.0;
        for (const auto& row : ranks) ss += (row[j] - mean) * (row[j] - mean);
        out[j] = ss / n;
    }
    return out;
}

struct FriedmanResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::vector<ModelId> models;
    std::vector<double> rank_sums;
};

/**
 * Friedman test across cases: models are rank-transformed within each case
 * (average ties), and the chi-square statistic
 * 12/(nK(K+1)) * sum(R_k^2) - 3n(K+1) is referred to K-1 degrees of freedom.
 */
inline FriedmanResult friedman_test(const CaseTable& table) {
    table.require_complete();
    if (table.n_cases() < 2 || table.n_models() < 2)
        fail(ErrorCode::IncompleteTable,
             "Friedman test needs at least 2 cases and 2 models");

    const auto ranks = case_ranks(table);
    const double n = static_cast<double>(table.n_cases());
    const double k = static_cast<double>(table.n_models());

    FriedmanResult result;
    result.models = table.models;
    result.rank_sums.assign(table.n_models(), 0.0);
    for (const auto& row : ranks)
        for (std::size_t j = 0; j < row.size(); ++j) result.rank_sums[j] += row[j];

    double sum_sq = 0.0;
    for (double r : result.rank_sums) sum_sq += r * r;
    result.statistic = 12.0 / (n * k * (k + 1.0)) * sum_sq - 3.0 * n * (k + 1.0);
    if (result.statistic < 0.0 && result.statistic > -1e-9) result.statistic = 0.0;
    result.dof = static_cast<int>(table.n_models()) - 1;
    result.p_value = special::chi_square_sf(result.statistic, result.dof);
    return result;
}

struct RegimeAccuracy {
    RegimeLabel regime = RegimeLabel::Mixed;
    double accuracy = 0.0;
    std::size_t n = 0;
};

struct SelectionAccuracyResult {
    std::vector<RegimeAccuracy> per_regime; // LowNoise, HighNoise, Mixed order
    double overall = 0.0;
    std::size_t n_cases = 0;
};

/// Whether the selected column holds (or ties) the row minimum.
inline bool selection_is_best(const CaseTable& table, std::size_t case_idx,
                              ModelId selection) {
    const auto& row = table.values[case_idx];
    const double best = *std::min_element(row.begin(), row.end());
    return row[table.model_column(selection)] == best;
}

/**
 * Fraction of cases whose selected model attains the case's minimum metric
 * (ties count as correct), reported per regime with counts and overall.
 */
inline SelectionAccuracyResult selection_accuracy(const std::vector<ModelId>& selections,
                                                  const CaseTable& table,
                                                  const std::vector<RegimeLabel>& regimes) {
    table.require_complete();
    if (selections.size() != table.n_cases() || regimes.size() != table.n_cases())
        fail(ErrorCode::MissingCase,
             "need one selection and one regime label per case: have " +
                 std::to_string(selections.size()) + " selections, " +
                 std::to_string(regimes.size()) + " regimes, " +
                 std::to_string(table.n_cases()) + " cases");

    constexpr RegimeLabel kOrder[] = {RegimeLabel::LowNoise, RegimeLabel::HighNoise,
                                      RegimeLabel::Mixed};
    SelectionAccuracyResult result;
    result.n_cases = table.n_cases();
    std::size_t total_correct = 0;
    for (RegimeLabel regime : kOrder) {
        RegimeAccuracy acc;
        acc.regime = regime;
        std::size_t correct = 0;
        for (std::size_t i = 0; i < table.n_cases(); ++i) {
            if (regimes[i] != regime) continue;
            ++acc.n;
            if (selection_is_best(table, i, selections[i])) ++correct;
        }
        acc.accuracy = acc.n == 0 ? 0.0 : static_cast<double>(correct) /
                                              static_cast<double>(acc.n);
        total_correct += correct;
        result.per_regime.push_back(acc);
    }
    result.overall = static_cast<double>(total_correct) / static_cast<double>(result.n_cases);
    return result;
}

/**
 * Per-case cost of following the selections instead of the oracle: the
 * selected model's relative RMSE minus 1, which is zero exactly when the
 * selection is optimal for that case.
 */
inline std::vector<double> deviation_from_best(const std::vector<ModelId>& selections,
                                               const CaseTable& relative_table) {
    relative_table.require_complete();
    if (selections.size() != relative_table.n_cases())
        fail(ErrorCode::MissingCase, "need one selection per case: have " +
                                         std::to_string(selections.size()) +
                                         " selections for " +
                                         std::to_string(relative_table.n_cases()) + " cases");
    std::vector<double> out;
    out.reserve(selections.size());
    for (std::size_t i = 0; i < selections.size(); ++i) {
        const std::size_t col = relative_table.model_column(selections[i]);
        out.push_back(relative_table.values[i][col] - 1.0);
    }
    return out;
}

/// Model with the lowest mean relative RMSE across cases; ties break toward
/// the lower model id. Passing an already-normalized table is fine: relative
/// normalization is idempotent.
inline ModelId best_single_model(const CaseTable& table) {
    const CaseTable rel = relative_rmse(table);
    const double n = static_cast<double>(rel.n_cases());
    ModelId best = rel.models.front();
    double best_mean = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rel.n_models(); ++j) {
        double mean = 0.0;
        for (const auto& row : rel.values) mean += row[j];
        mean /= n;
        if (mean < best_mean || (mean == best_mean && rel.models[j] < best)) {
            best_mean = mean;
            best = rel.models[j];
        }
    }
    return best;
}

/// Mean of each model's column; pairs with best_single_model for reporting.
inline std::vector<double> column_means(const CaseTable& table) {
    table.require_complete();
    std::vector<double> means(table.n_models(), 0.0);
    for (const auto& row : table.values)
        for (std::size_t j = 0; j < row.size(); ++j) means[j] += row[j];
    for (double& m : means) m /= static_cast<double>(table.n_cases());
    return means;
}

} // namespace rb
