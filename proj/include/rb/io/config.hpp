#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rb/errors.hpp"
#include "rb/forecaster.hpp"
#include "rb/selector.hpp"

namespace rb::io {

/// 64-bit FNV-1a; stable across platforms, used for config fingerprints and
/// per-job seed derivation.
inline std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct DatasetSpec {
    std::string name;
    std::string csv_path;
    std::string value_column = "value";
    std::string timestamp_column = "timestamp";
    std::optional<int> seasonal_period;
};

/**
 * Everything a run needs, loaded from one JSON file so every threshold,
 * grid bound and seed is visible and overridable in a single place.
 */
struct HarnessConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<int> horizons{1, 24};
    int folds = 3;
    int min_train = 30;
    ModelConfig model;
    SelectorMode selector_mode = SelectorMode::Rule;
    RuleThresholds thresholds;
    std::vector<CompatibilityProfile> profiles;
    std::string results_dir = "results";
    std::uint64_t seed = 0;
};

namespace detail {

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

inline std::array<double, kDescriptorDim> read_components(const nlohmann::json& j) {
    const auto values = j.get<std::vector<double>>();
    if (values.size() != kDescriptorDim)
        fail(ErrorCode::DimensionMismatch,
             "profile vectors need " + std::to_string(kDescriptorDim) + " components, got " +
                 std::to_string(values.size()));
    std::array<double, kDescriptorDim> out{};
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

} // namespace detail

inline nlohmann::json to_json(const HarnessConfig& config) {
    nlohmann::json j;
    j["seed"] = config.seed;
    j["horizons"] = config.horizons;
    j["folds"] = config.folds;
    j["min_train"] = config.min_train;
    j["results_dir"] = config.results_dir;
    j["datasets"] = nlohmann::json::array();
    for (const auto& d : config.datasets) {
        nlohmann::json jd{{"name", d.name},
                          {"csv_path", d.csv_path},
                          {"value_column", d.value_column},
                          {"timestamp_column", d.timestamp_column}};
        if (d.seasonal_period) jd["seasonal_period"] = *d.seasonal_period;
        j["datasets"].push_back(jd);
    }
    j["model"] = {{"lag_window", config.model.lag_window},
                  {"arima_max_p", config.model.arima_max_p},
                  {"arima_max_q", config.model.arima_max_q},
                  {"rf_trees", config.model.rf_trees},
                  {"rf_depth", config.model.rf_depth}};
    if (config.model.seasonal_period)
        j["model"]["seasonal_period"] = *config.model.seasonal_period;
    j["selector"] = {{"mode", to_string(config.selector_mode)},
                     {"thresholds",
                      {{"noise_low", config.thresholds.noise_low},
                       {"noise_high", config.thresholds.noise_high},
                       {"acf_high", config.thresholds.acf_high},
                       {"seasonality_high", config.thresholds.seasonality_high},
                       {"noise_low_regime", config.thresholds.noise_low_regime},
                       {"noise_high_regime", config.thresholds.noise_high_regime}}}};
    j["selector"]["profiles"] = nlohmann::json::array();
    for (const auto& p : config.profiles)
        j["selector"]["profiles"].push_back(
            {{"model", to_string(p.model_id)},
             {"weights", std::vector<double>(p.weights.begin(), p.weights.end())},
             {"prototype", std::vector<double>(p.prototype.begin(), p.prototype.end())}});
    return j;
}

inline HarnessConfig config_from_json(const nlohmann::json& j) {
    HarnessConfig config;
    detail::read_if(j, "seed", config.seed);
    detail::read_if(j, "horizons", config.horizons);
    detail::read_if(j, "folds", config.folds);
    detail::read_if(j, "min_train", config.min_train);
    detail::read_if(j, "results_dir", config.results_dir);

    if (j.contains("datasets"))
        for (const auto& jd : j.at("datasets")) {
            DatasetSpec d;
            d.name = jd.at("name").get<std::string>();
            d.csv_path = jd.at("csv_path").get<std::string>();
            detail::read_if(jd, "value_column", d.value_column);
            detail::read_if(jd, "timestamp_column", d.timestamp_column);
            if (jd.contains("seasonal_period"))
                d.seasonal_period = jd.at("seasonal_period").get<int>();
            config.datasets.push_back(std::move(d));
        }

    if (j.contains("model")) {
        const auto& jm = j.at("model");
        detail::read_if(jm, "lag_window", config.model.lag_window);
        detail::read_if(jm, "arima_max_p", config.model.arima_max_p);
        detail::read_if(jm, "arima_max_q", config.model.arima_max_q);
        detail::read_if(jm, "rf_trees", config.model.rf_trees);
        detail::read_if(jm, "rf_depth", config.model.rf_depth);
        if (jm.contains("seasonal_period"))
            config.model.seasonal_period = jm.at("seasonal_period").get<int>();
    }

    if (j.contains("selector")) {
        const auto& js = j.at("selector");
        if (js.contains("mode"))
            config.selector_mode = parse_selector_mode(js.at("mode").get<std::string>());
        if (js.contains("thresholds")) {
            const auto& jt = js.at("thresholds");
            detail::read_if(jt, "noise_low", config.thresholds.noise_low);
            detail::read_if(jt, "noise_high", config.thresholds.noise_high);
            detail::read_if(jt, "acf_high", config.thresholds.acf_high);
            detail::read_if(jt, "seasonality_high", config.thresholds.seasonality_high);
            detail::read_if(jt, "noise_low_regime", config.thresholds.noise_low_regime);
            detail::read_if(jt, "noise_high_regime", config.thresholds.noise_high_regime);
        }
        if (js.contains("profiles"))
            for (const auto& jp : js.at("profiles")) {
                CompatibilityProfile p;
                p.model_id = parse_model_id(jp.at("model").get<std::string>());
                if (jp.contains("weights"))
                    p.weights = detail::read_components(jp.at("weights"));
                if (jp.contains("prototype"))
                    p.prototype = detail::read_components(jp.at("prototype"));
                config.profiles.push_back(p);
            }
    }
    return config;
}

/// Structural checks shared by every command that consumes a config.
inline void validate_config(const HarnessConfig& config) {
    if (config.datasets.empty())
        fail(ErrorCode::InvalidArgument, "config lists no datasets");
    if (config.horizons.empty())
        fail(ErrorCode::InvalidArgument, "config lists no horizons");
    for (int h : config.horizons)
        if (h < 1) fail(ErrorCode::InvalidArgument, "horizons must be positive");
    if (config.folds < 1) fail(ErrorCode::InvalidArgument, "folds must be positive");
    if (config.min_train < 1)
        fail(ErrorCode::InvalidArgument, "min_train must be positive");
    for (const auto& d : config.datasets) {
        if (d.name.empty()) fail(ErrorCode::InvalidArgument, "dataset with empty name");
        if (!std::filesystem::exists(d.csv_path))
            fail(ErrorCode::FileNotFound,
                 "dataset '" + d.name + "' references missing file " + d.csv_path);
    }
}

inline HarnessConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) fail(ErrorCode::FileNotFound, "cannot open config " + path);
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "config " + path + ": " + e.what());
    }
    try {
        HarnessConfig config = config_from_json(j);
        validate_config(config);
        return config;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "config " + path + ": " + e.what());
    }
}

/// Fingerprint of the run-relevant configuration (everything except the
/// results directory, which only says where artifacts land).
inline std::string config_hash(const HarnessConfig& config) {
    nlohmann::json j = to_json(config);
    j.erase("results_dir");
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return std::string(buffer);
}

} // namespace rb::io
