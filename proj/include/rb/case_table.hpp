#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rb/errors.hpp"
#include "rb/forecaster.hpp"

namespace rb {

/// Aggregated outcome of one (dataset, horizon, model) backtest job.
struct BacktestRecord {
    std::string dataset;
    int horizon = 0;
    ModelId model_id = ModelId::Naive;
    double rmse = 0.0;
    double mae = 0.0;
    double fit_seconds = 0.0;
    int fold_count = 0;
};

/// A dataset-horizon evaluation case, e.g. "tetuan@H24".
struct CaseId {
    std::string dataset;
    int horizon = 1;

    std::string label() const { return dataset + "@H" + std::to_string(horizon); }

    friend bool operator==(const CaseId& a, const CaseId& b) {
        return a.dataset == b.dataset && a.horizon == b.horizon;
    }
    friend bool operator<(const CaseId& a, const CaseId& b) {
        if (a.dataset != b.dataset) return a.dataset < b.dataset;
        return a.horizon < b.horizon;
    }
};

/**
 * Rectangular metric matrix: one row per dataset-horizon case, one column per
 * model. Cells start as NaN and analyses that need every cell call
 * require_complete() first.
 */
struct CaseTable {
    std::vector<CaseId> cases;
    std::vector<ModelId> models;
    std::vector<std::vector<double>> values; // values[case][model]

    std::size_t n_cases() const { return cases.size(); }
    std::size_t n_models() const { return models.size(); }

    double at(std::size_t case_idx, std::size_t model_idx) const {
        return values[case_idx][model_idx];
    }

    std::size_t model_column(ModelId id) const {
        const auto it = std::find(models.begin(), models.end(), id);
        if (it == models.end())
            fail(ErrorCode::MissingCase, "model " + std::string(to_string(id)) +
                                             " has no column in the table");
        return static_cast<std::size_t>(it - models.begin());
    }

    std::size_t case_row(const CaseId& id) const {
        const auto it = std::find(cases.begin(), cases.end(), id);
        if (it == cases.end())
            fail(ErrorCode::MissingCase, "case " + id.label() + " is not in the table");
        return static_cast<std::size_t>(it - cases.begin());
    }

    void require_complete() const {
        if (cases.empty() || models.empty())
            fail(ErrorCode::IncompleteTable, "table has no cases or no models");
        for (std::size_t i = 0; i < cases.size(); ++i) {
            if (values[i].size() != models.size())
                fail(ErrorCode::IncompleteTable, "ragged row for case " + cases[i].label());
            for (std::size_t j = 0; j < models.size(); ++j)
                if (std::isnan(values[i][j]))
                    fail(ErrorCode::IncompleteTable,
                         "missing cell (" + cases[i].label() + ", " +
                             std::string(to_string(models[j])) + ")");
        }
    }

    /**
     * Builds the RMSE table from completed records. Cases are sorted by
     * (dataset, horizon) and models ascending by id, so the table layout does
     * not depend on the order records were produced in; duplicate keys keep
     * the last record seen.
     */
    static CaseTable from_records(const std::vector<BacktestRecord>& records) {
        std::map<CaseId, std::map<ModelId, double>> cells;
        for (const auto& rec : records)
            cells[CaseId{rec.dataset, rec.horizon}][rec.model_id] = rec.rmse;

        std::vector<ModelId> models;
        for (const auto& [case_id, row] : cells)
            for (const auto& [model, value] : row)
                if (std::find(models.begin(), models.end(), model) == models.end())
                    models.push_back(model);
        std::sort(models.begin(), models.end());

        CaseTable table;
        table.models = std::move(models);
        for (const auto& [case_id, row] : cells) {
            table.cases.push_back(case_id);
            std::vector<double> cols(table.models.size(),
                                     std::numeric_limits<double>::quiet_NaN());
            for (std::size_t j = 0; j < table.models.size(); ++j) {
                const auto it = row.find(table.models[j]);
                if (it != row.end()) cols[j] = it->second;
            }
            table.values.push_back(std::move(cols));
        }
        return table;
    }
};

} // namespace rb
