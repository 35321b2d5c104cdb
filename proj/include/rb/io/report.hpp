#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rb/analysis.hpp"
#include "rb/case_table.hpp"
#include "rb/errors.hpp"
#include "rb/io/results_store.hpp"
#include "rb/io/svg.hpp"
#include "rb/selector.hpp"

namespace rb::io {

/// Selector outcome recorded per dataset during a backtest run. Regime and
/// chosen model depend only on the dataset's descriptors, so one label
/// covers every horizon of that dataset.
struct DatasetLabel {
    RegimeLabel regime = RegimeLabel::Mixed;
    ModelId selected = ModelId::Naive;
};

using LabelMap = std::map<std::string, DatasetLabel>;

inline nlohmann::json labels_to_json(const LabelMap& labels) {
    nlohmann::json datasets = nlohmann::json::object();
    for (const auto& [name, label] : labels)
        datasets[name] = {{"regime", to_string(label.regime)},
                          {"selected", to_string(label.selected)}};
    return {{"schema", "rb-labels/1"}, {"datasets", datasets}};
}

inline LabelMap labels_from_json(const nlohmann::json& doc) {
    LabelMap labels;
    try {
        for (const auto& [name, entry] : doc.at("datasets").items())
            labels[name] = {parse_regime_label(entry.at("regime").get<std::string>()),
                            parse_model_id(entry.at("selected").get<std::string>())};
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("labels document: ") + e.what());
    }
    return labels;
}

namespace detail {

/// JSON has no encoding for infinity; the report uses null for non-finite
/// cells (they arise only when a case has a zero-error winner).
inline nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline nlohmann::json matrix_json(const std::vector<std::vector<double>>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m) {
        nlohmann::json cells = nlohmann::json::array();
        for (double v : row) cells.push_back(finite_or_null(v));
        rows.push_back(std::move(cells));
    }
    return rows;
}

inline std::string csv_num(double v) {
    if (!std::isfinite(v)) return "inf";
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) fail(ErrorCode::FileNotFound, "cannot write '" + path.string() + "'");
}

/// Charts cannot place a point at infinity: clamp non-finite values to the
/// largest finite value present so degenerate cells stay visible.
inline std::vector<double> cap_nonfinite(std::vector<double> values) {
    double cap = 1.0;
    for (double v : values)
        if (std::isfinite(v)) cap = std::max(cap, v);
    for (double& v : values)
        if (!std::isfinite(v)) v = cap;
    return values;
}

} // namespace detail

/**
 * Assembles the case table from raw records and insists that it is
 * rectangular: every case must cover every model that appears anywhere in
 * the results. Holes are reported by job label so the caller knows exactly
 * which backtest runs are missing.
 */
inline CaseTable table_from_records(const std::vector<BacktestRecord>& records) {
    if (records.empty())
        fail(ErrorCode::IncompleteResults, "no backtest records found");
    CaseTable table = CaseTable::from_records(records);
    std::string missing;
    int count = 0;
    for (std::size_t i = 0; i < table.n_cases(); ++i)
        for (std::size_t j = 0; j < table.n_models(); ++j)
            if (std::isnan(table.values[i][j])) {
                if (count++) missing += ", ";
                missing += JobKey{table.cases[i].dataset, table.cases[i].horizon,
                                  table.models[j]}
                               .label();
            }
    if (count)
        fail(ErrorCode::IncompleteResults,
             "missing " + std::to_string(count) + " job(s): " + missing);
    return table;
}

/**
 * The full analysis bundle as one JSON document ("rb-report/1"). Everything
 * inside is a pure function of the case table and the selector labels; no
 * timing or environment information enters, so identical inputs yield
 * byte-identical reports.
 */
inline nlohmann::json build_report(const CaseTable& table,
                                   const std::optional<LabelMap>& labels) {
    const CaseTable relative = relative_rmse(table);
    const WinMatrix wins = pairwise_win_matrix(table);
    const std::vector<double> variances = rank_variance(table);
    const HorizonProfile profile = horizon_profile(table);
    const std::vector<double> means = column_means(relative);
    const ModelId best = best_single_model(table);

    // The Friedman test needs at least two cases; a single-case run still
    // deserves the rest of the report, so the field turns null instead.
    nlohmann::json friedman_json = nullptr;
    if (table.n_cases() >= 2 && table.n_models() >= 2) {
        const FriedmanResult friedman = friedman_test(table);
        nlohmann::json sums_json = nlohmann::json::array();
        for (double v : friedman.rank_sums) sums_json.push_back(v);
        friedman_json = {{"statistic", friedman.statistic},
                         {"dof", friedman.dof},
                         {"p_value", friedman.p_value},
                         {"rank_sums", sums_json}};
    }

    nlohmann::json cases = nlohmann::json::array();
    for (const CaseId& c : table.cases)
        cases.push_back({{"dataset", c.dataset}, {"horizon", c.horizon}});
    nlohmann::json models = nlohmann::json::array();
    for (ModelId m : table.models) models.push_back(to_string(m));

    nlohmann::json mean_json = nlohmann::json::array();
    for (double v : means) mean_json.push_back(detail::finite_or_null(v));
    nlohmann::json var_json = nlohmann::json::array();
    for (double v : variances) var_json.push_back(v);

    nlohmann::json report = {
        {"schema", "rb-report/1"},
        {"cases", cases},
        {"models", models},
        {"rmse", detail::matrix_json(table.values)},
        {"relative_rmse", detail::matrix_json(relative.values)},
        {"column_mean_relative", mean_json},
        {"best_single_model", to_string(best)},
        {"win_matrix", detail::matrix_json(wins.win)},
        {"rank_variance", var_json},
        {"friedman", friedman_json},
        {"per_horizon_mean_relative",
         {{"horizons", profile.horizons},
          {"mean_relative", detail::matrix_json(profile.mean_relative)}}},
        {"selection", nullptr},
    };

    if (labels) {
        std::vector<ModelId> selections;
        std::vector<RegimeLabel> regimes;
        for (const CaseId& c : table.cases) {
            auto it = labels->find(c.dataset);
            if (it == labels->end())
                fail(ErrorCode::MissingCase,
                     "no selection label for dataset '" + c.dataset + "'");
            selections.push_back(it->second.selected);
            regimes.push_back(it->second.regime);
        }
        const SelectionAccuracyResult accuracy =
            selection_accuracy(selections, table, regimes);
        const std::vector<double> deviations = deviation_from_best(selections, relative);

        nlohmann::json per_regime = nlohmann::json::array();
        for (const RegimeAccuracy& r : accuracy.per_regime)
            per_regime.push_back({{"regime", to_string(r.regime)},
                                  {"accuracy", r.accuracy},
                                  {"cases", r.n}});
        nlohmann::json dev_json = nlohmann::json::array();
        double dev_sum = 0.0;
        for (double d : deviations) {
            dev_json.push_back(detail::finite_or_null(d));
            if (std::isfinite(d)) dev_sum += d;
        }
        nlohmann::json selected_json = nlohmann::json::array();
        for (ModelId m : selections) selected_json.push_back(to_string(m));
        report["selection"] = {
            {"per_regime", per_regime},
            {"overall", accuracy.overall},
            {"cases", accuracy.n_cases},
            {"selected", selected_json},
            {"deviation", dev_json},
            {"mean_deviation",
             deviations.empty() ? 0.0 : dev_sum / static_cast<double>(deviations.size())},
        };
    }
    return report;
}

/**
 * Writes report.json plus the companion CSV tables and the five SVG charts
 * under the store's report directory. Returns the assembled report.
 */
inline nlohmann::json write_report_bundle(const ResultsStore& store,
                                          const CaseTable& table,
                                          const std::optional<LabelMap>& labels) {
    const nlohmann::json report = build_report(table, labels);
    const std::filesystem::path dir = store.report_dir();
    std::filesystem::create_directories(dir);

    detail::write_text(dir / "report.json", report.dump(2) + "\n");

    const CaseTable relative = relative_rmse(table);
    const WinMatrix wins = pairwise_win_matrix(table);
    const std::vector<double> variances = rank_variance(table);
    const HorizonProfile profile = horizon_profile(table);

    std::vector<std::string> model_names;
    for (ModelId m : table.models) model_names.emplace_back(to_string(m));

    auto table_csv = [&](const std::vector<std::vector<double>>& rows) {
        std::string text = "case";
        for (const auto& name : model_names) text += "," + name;
        text += "\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            text += table.cases[i].label();
            for (double v : rows[i]) text += "," + detail::csv_num(v);
            text += "\n";
        }
        return text;
    };
    detail::write_text(dir / "relative_rmse.csv", table_csv(relative.values));
    detail::write_text(dir / "rmse.csv", table_csv(table.values));

    std::string win_csv = "model";
    for (const auto& name : model_names) win_csv += "," + name;
    win_csv += "\n";
    for (std::size_t i = 0; i < wins.win.size(); ++i) {
        win_csv += model_names[i];
        for (double v : wins.win[i]) win_csv += "," + detail::csv_num(v);
        win_csv += "\n";
    }
    detail::write_text(dir / "win_matrix.csv", win_csv);

    std::string var_csv = "model,rank_variance\n";
    for (std::size_t j = 0; j < variances.size(); ++j)
        var_csv += model_names[j] + "," + detail::csv_num(variances[j]) + "\n";
    detail::write_text(dir / "rank_variance.csv", var_csv);

    std::string horizon_csv = "horizon";
    for (const auto& name : model_names) horizon_csv += "," + name;
    horizon_csv += "\n";
    for (std::size_t h = 0; h < profile.horizons.size(); ++h) {
        horizon_csv += std::to_string(profile.horizons[h]);
        for (double v : profile.mean_relative[h]) horizon_csv += "," + detail::csv_num(v);
        horizon_csv += "\n";
    }
    detail::write_text(dir / "per_horizon_mean_relative.csv", horizon_csv);

    // Chart 1: distribution of relative RMSE per model.
    std::vector<std::vector<double>> columns(table.n_models());
    for (std::size_t j = 0; j < table.n_models(); ++j) {
        for (const auto& row : relative.values)
            if (std::isfinite(row[j])) columns[j].push_back(row[j]);
        if (columns[j].empty()) columns[j].push_back(1.0);
    }
    detail::write_text(dir / "relative_rmse_box.svg",
                       svg::box_plot(model_names, columns, "Relative RMSE by model",
                                     "relative RMSE"));

    // Chart 2: pairwise win fractions (row beats column).
    detail::write_text(dir / "win_matrix.svg",
                       svg::heat_grid(model_names, wins.win, "Pairwise win fraction"));

    // Chart 3: rank variance per model.
    detail::write_text(dir / "rank_variance.svg",
                       svg::bar_chart(model_names, variances, "Rank variance by model",
                                      "variance of rank"));

    // Chart 4: mean relative RMSE per horizon, one line per model.
    std::vector<std::string> horizon_labels;
    for (int h : profile.horizons)
        horizon_labels.push_back("H=" + std::to_string(h));
    std::vector<std::vector<double>> by_model(table.n_models());
    for (std::size_t j = 0; j < table.n_models(); ++j) {
        std::vector<double> line;
        for (const auto& row : profile.mean_relative) line.push_back(row[j]);
        by_model[j] = detail::cap_nonfinite(line);
    }
    detail::write_text(dir / "per_horizon.svg",
                       svg::line_chart(horizon_labels, model_names, by_model,
                                       "Mean relative RMSE by horizon",
                                       "mean relative RMSE"));

    // Chart 5: per-case deviation from the best model. With selector labels
    // this shows the selected model's gap; without, the gap of the single
    // best overall model.
    std::vector<ModelId> shown(table.n_cases(), best_single_model(table));
    std::string chart_title = "Deviation from best (single best model)";
    if (labels) {
        for (std::size_t i = 0; i < table.n_cases(); ++i)
            shown[i] = labels->at(table.cases[i].dataset).selected;
        chart_title = "Deviation from best (selected model)";
    }
    std::vector<std::string> case_labels;
    for (const CaseId& c : table.cases) case_labels.push_back(c.label());
    detail::write_text(dir / "deviation.svg",
                       svg::bar_chart(case_labels,
                                      detail::cap_nonfinite(
                                          deviation_from_best(shown, relative)),
                                      chart_title, "relative RMSE - 1"));

    return report;
}

} // namespace rb::io
