#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rb/descriptors.hpp"
#include "rb/errors.hpp"
#include "rb/fixtures.hpp"
#include "rb/io/config.hpp"
#include "rb/io/csv.hpp"
#include "rb/io/report.hpp"
#include "rb/io/results_store.hpp"
#include "rb/io/runner.hpp"
#include "rb/selector.hpp"

namespace rb::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitJobFailure = 4;

namespace detail {

inline int usage_error(std::ostream& err, const std::string& message) {
    err << "error: Usage: " << message << "\n";
    return kExitUsage;
}

inline int emit_error(std::ostream& err, const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
    case ErrorCode::UnknownFixture: return kExitUsage;
    case ErrorCode::JobFailure: return kExitJobFailure;
    default: return kExitDataError;
    }
}

inline const io::DatasetSpec* find_dataset(const io::HarnessConfig& config,
                                           const std::string& name) {
    for (const io::DatasetSpec& spec : config.datasets)
        if (spec.name == name) return &spec;
    return nullptr;
}

inline std::string dataset_names(const io::HarnessConfig& config) {
    std::string names;
    for (const io::DatasetSpec& spec : config.datasets) {
        if (!names.empty()) names += ", ";
        names += spec.name;
    }
    return names;
}

/// Loads one configured dataset and forward-fills gaps so descriptors and
/// selection see a complete series (backtesting fills again on its own).
inline TimeSeries load_dataset(const io::DatasetSpec& spec) {
    const TimeSeries raw = io::load_csv(spec.csv_path, spec.value_column,
                                        spec.timestamp_column, spec.seasonal_period,
                                        spec.name);
    return raw.has_missing() ? forward_fill(raw) : raw;
}

inline nlohmann::json descriptor_json(const DescriptorVector& d) {
    nlohmann::json doc;
    const auto components = d.components();
    const auto& names = descriptor_names();
    for (std::size_t i = 0; i < kDescriptorDim; ++i) doc[names[i]] = components[i];
    doc["acf1"] = d.acf1;
    return doc;
}

/// Selector dispatch shared by `select` and the labels written by `backtest`.
inline SelectionResult run_selection(const DescriptorVector& d,
                                     const io::HarnessConfig& config,
                                     SelectorMode mode) {
    if (mode == SelectorMode::Rule) return rule_based_select(d, config.thresholds);
    if (config.profiles.empty())
        fail(ErrorCode::MissingProfiles,
             std::string("selector mode '") + to_string(mode) +
                 "' requires compatibility profiles in the configuration");
    return select_model(d, config.profiles, mode);
}

/// Precedence: explicit flag, then RB_RESULTS_DIR, then the configured value.
inline std::optional<std::filesystem::path> resolve_results_dir(
    const std::string& flag, const io::HarnessConfig* config) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* env = std::getenv("RB_RESULTS_DIR"); env && *env)
        return std::filesystem::path(env);
    if (config) return std::filesystem::path(config->results_dir);
    return std::nullopt;
}

// -----------------------------------------------------------------------
// subcommand bodies

inline int cmd_describe(const io::HarnessConfig& config, const std::string& dataset,
                        std::ostream& out, std::ostream& err) {
    const io::DatasetSpec* spec = find_dataset(config, dataset);
    if (!spec)
        return usage_error(err, "unknown dataset '" + dataset +
                                    "' (configured: " + dataset_names(config) + ")");
    const TimeSeries series = load_dataset(*spec);
    const DescriptorVector d = extract_descriptors(series);
    const nlohmann::json doc = {
        {"dataset", spec->name},
        {"length", series.size()},
        {"descriptors", descriptor_json(d)},
        {"regime", to_string(classify_regime(d.r3_noise, config.thresholds))},
    };
    out << doc.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_select(const io::HarnessConfig& config, const std::string& dataset,
                      const std::string& mode_name, std::ostream& out,
                      std::ostream& err) {
    const io::DatasetSpec* spec = find_dataset(config, dataset);
    if (!spec)
        return usage_error(err, "unknown dataset '" + dataset +
                                    "' (configured: " + dataset_names(config) + ")");
    const SelectorMode mode =
        mode_name.empty() ? config.selector_mode : parse_selector_mode(mode_name);
    const TimeSeries series = load_dataset(*spec);
    const DescriptorVector d = extract_descriptors(series);
    const SelectionResult result = run_selection(d, config, mode);

    nlohmann::json scores = nlohmann::json::array();
    for (const ScoredModel& s : result.scores)
        scores.push_back({{"model", to_string(s.model_id)}, {"score", s.score}});
    const nlohmann::json doc = {
        {"dataset", spec->name},
        {"mode", to_string(mode)},
        {"chosen", to_string(result.chosen)},
        {"rationale", result.rationale},
        {"scores", scores},
    };
    out << doc.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_backtest(const io::HarnessConfig& config,
                        const std::filesystem::path& results_dir, int jobs, bool force,
                        std::ostream& out, std::ostream& err) {
    std::map<std::string, TimeSeries> datasets;
    io::LabelMap labels;
    for (const io::DatasetSpec& spec : config.datasets) {
        TimeSeries series = load_dataset(spec);
        const DescriptorVector d = extract_descriptors(series);
        const SelectionResult selection = run_selection(d, config, config.selector_mode);
        labels[spec.name] = {classify_regime(d.r3_noise, config.thresholds),
                             selection.chosen};
        datasets.emplace(spec.name, std::move(series));
    }

    io::ResultsStore store(results_dir);
    store.ensure_layout();
    store.write_labels(io::labels_to_json(labels));
    const io::RunSummary summary =
        io::run_backtests(config, datasets, store, jobs, force, err);

    const nlohmann::json doc = {
        {"results_dir", results_dir.string()},
        {"manifest", store.manifest_path()},
        {"jobs", summary.manifest.jobs.size()},
        {"executed", summary.executed},
        {"skipped", summary.skipped},
        {"failed", summary.failed},
    };
    out << doc.dump(2) << "\n";
    return summary.failed ? kExitJobFailure : kExitOk;
}

inline int cmd_analyze(const std::filesystem::path& results_dir, std::ostream& out,
                       std::ostream&) {
    io::ResultsStore store(results_dir);
    const std::vector<BacktestRecord> records = store.load_records();
    if (records.empty())
        fail(ErrorCode::IncompleteResults,
             "no backtest records under '" + results_dir.string() + "'");
    const CaseTable table = io::table_from_records(records);

    std::optional<io::LabelMap> labels;
    if (const auto doc = store.read_labels()) labels = io::labels_from_json(*doc);

    const nlohmann::json report = io::write_report_bundle(store, table, labels);
    out << report.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_fixture(const std::string& name, const std::filesystem::path& out_dir,
                       std::ostream& out, std::ostream&) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    auto store_records = [&](const CaseTable& table) {
        io::ResultsStore store(out_dir);
        store.clear_records();
        store.ensure_layout();
        for (std::size_t i = 0; i < table.n_cases(); ++i)
            for (std::size_t j = 0; j < table.n_models(); ++j) {
                BacktestRecord record;
                record.dataset = table.cases[i].dataset;
                record.horizon = table.cases[i].horizon;
                record.model_id = table.models[j];
                record.rmse = table.values[i][j];
                record.mae = table.values[i][j];
                record.fold_count = 3;
                store.append(record);
            }
        written.push_back(store.records_dir());
    };

    if (name == "table3") {
        const CaseTable table = fixtures::benchmark_rmse_table();
        std::string csv = "dataset";
        for (ModelId m : table.models) csv += std::string(",") + to_string(m);
        csv += "\n";
        for (std::size_t i = 0; i < table.n_cases(); ++i) {
            csv += table.cases[i].dataset;
            for (double v : table.values[i]) {
                char cell[32];
                std::snprintf(cell, sizeof cell, ",%.4f", v);
                csv += cell;
            }
            csv += "\n";
        }
        io::detail::write_text(out_dir / "table3.csv", csv);
        written.push_back((out_dir / "table3.csv").string());
        store_records(table);
    } else if (name == "table5-labels") {
        const fixtures::LabeledTable labeled = fixtures::labeled_benchmark_table();
        store_records(labeled.table);
        io::LabelMap labels;
        for (std::size_t i = 0; i < labeled.table.n_cases(); ++i)
            labels[labeled.table.cases[i].dataset] = {labeled.regimes[i],
                                                      labeled.selections[i]};
        io::ResultsStore store(out_dir);
        store.write_labels(io::labels_to_json(labels));
        written.push_back(store.labels_path());
    } else if (name == "synthetic-suite") {
        io::HarnessConfig config;
        config.datasets.clear();
        for (const TimeSeries& series : fixtures::synthetic_suite()) {
            const fs::path csv_path = out_dir / (series.name + ".csv");
            io::write_csv(csv_path, series);
            written.push_back(csv_path.string());
            io::DatasetSpec spec;
            spec.name = series.name;
            spec.csv_path = fs::absolute(csv_path).string();
            spec.seasonal_period = series.frequency_hint;
            config.datasets.push_back(spec);
        }
        config.horizons = {1, 24};
        config.folds = 3;
        config.min_train = 60;
        config.results_dir = fs::absolute(out_dir / "results").string();
        io::detail::write_text(out_dir / "config.json",
                               io::to_json(config).dump(2) + "\n");
        written.push_back((out_dir / "config.json").string());
    } else {
        fail(ErrorCode::UnknownFixture,
             "unknown fixture '" + name +
                 "' (available: table3, table5-labels, synthetic-suite)");
    }

    nlohmann::json files = nlohmann::json::array();
    for (const std::string& path : written) files.push_back(path);
    out << nlohmann::json{{"fixture", name}, {"files", files}}.dump(2) << "\n";
    return kExitOk;
}

} // namespace detail

/**
 * In-process entry point: parses argv, dispatches to one subcommand, and
 * returns the process exit code. All output goes through the provided
 * streams so tests can run commands without spawning processes.
 */
inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"Regime-aware forecasting model selection laboratory"};
    app.set_version_flag("--version", io::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool force = false;
    app.add_option("--config", config_path, "Harness configuration file (JSON)");
    app.add_option("--jobs", jobs, "Worker threads for backtest jobs")
        ->check(CLI::PositiveNumber);
    CLI::Option* seed_option =
        app.add_option("--seed", seed, "Override the configured RNG seed");
    app.add_flag("--force", force, "Redo completed backtest jobs");

    std::string dataset;
    std::string mode_name;
    std::string results_flag;
    std::string fixture_name;
    std::string fixture_out = ".";

    CLI::App* describe = app.add_subcommand("describe", "Print a dataset's regime descriptors");
    describe->add_option("dataset", dataset, "Configured dataset name")->required();
    CLI::App* select = app.add_subcommand("select", "Choose a forecasting model for a dataset");
    select->add_option("dataset", dataset, "Configured dataset name")->required();
    select->add_option("--mode", mode_name, "Selector mode (rule, linear, logistic, distance)")
        ->check(CLI::IsMember({"rule", "linear", "logistic", "distance"}));
    CLI::App* backtest = app.add_subcommand("backtest", "Run every configured backtest job");
    backtest->add_option("--results", results_flag, "Results directory override");
    CLI::App* analyze = app.add_subcommand("analyze", "Build the analysis report bundle");
    analyze->add_option("--results", results_flag, "Results directory override");
    CLI::App* fixture = app.add_subcommand("fixture", "Write a built-in fixture");
    fixture->add_option("name", fixture_name, "table3, table5-labels, or synthetic-suite")
        ->required();
    fixture->add_option("--out", fixture_out, "Target directory");
    for (CLI::App* sub : {describe, select, backtest, analyze, fixture})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return detail::usage_error(err, e.what());
    }

    try {
        std::optional<io::HarnessConfig> config;
        if (!config_path.empty()) {
            config = io::load_config(config_path);
            if (seed_option->count()) config->seed = seed;
        }
        const bool needs_config = app.got_subcommand(describe) ||
                                  app.got_subcommand(select) ||
                                  app.got_subcommand(backtest);
        if (needs_config && !config)
            return detail::usage_error(
                err, "this command needs --config pointing at a harness configuration");

        if (app.got_subcommand(describe))
            return detail::cmd_describe(*config, dataset, out, err);
        if (app.got_subcommand(select))
            return detail::cmd_select(*config, dataset, mode_name, out, err);
        if (app.got_subcommand(backtest)) {
            const auto dir = detail::resolve_results_dir(results_flag, &*config);
            return detail::cmd_backtest(*config, *dir, jobs, force, out, err);
        }
        if (app.got_subcommand(analyze)) {
            const auto dir = detail::resolve_results_dir(
                results_flag, config ? &*config : nullptr);
            if (!dir)
                return detail::usage_error(
                    err, "no results directory: pass --results, set RB_RESULTS_DIR, "
                         "or provide --config");
            return detail::cmd_analyze(*dir, out, err);
        }
        if (app.got_subcommand(fixture))
            return detail::cmd_fixture(fixture_name, fixture_out, out, err);
    } catch (const Error& e) {
        return detail::emit_error(err, e);
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return kExitDataError;
    }
    return detail::usage_error(err, "no subcommand given");
}

} // namespace rb::cli
