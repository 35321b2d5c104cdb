#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rb/case_table.hpp"
#include "rb/errors.hpp"

namespace rb::io {

inline nlohmann::json record_to_json(const BacktestRecord& rec) {
    return {{"dataset", rec.dataset},   {"horizon", rec.horizon},
            {"model", to_string(rec.model_id)}, {"rmse", rec.rmse},
            {"mae", rec.mae},           {"fit_seconds", rec.fit_seconds},
            {"fold_count", rec.fold_count}};
}

inline BacktestRecord record_from_json(const nlohmann::json& j) {
    BacktestRecord rec;
    rec.dataset = j.at("dataset").get<std::string>();
    rec.horizon = j.at("horizon").get<int>();
    rec.model_id = parse_model_id(j.at("model").get<std::string>());
    rec.rmse = j.at("rmse").get<double>();
    rec.mae = j.at("mae").get<double>();
    rec.fit_seconds = j.value("fit_seconds", 0.0);
    rec.fold_count = j.value("fold_count", 0);
    return rec;
}

/// Identity of one backtest job.
struct JobKey {
    std::string dataset;
    int horizon = 0;
    ModelId model = ModelId::Naive;

    std::string label() const {
        return dataset + "@H" + std::to_string(horizon) + ":" + to_string(model);
    }
    friend bool operator==(const JobKey& a, const JobKey& b) {
        return a.dataset == b.dataset && a.horizon == b.horizon && a.model == b.model;
    }
};

struct JobStatus {
    JobKey key;
    bool done = false;
    std::string diagnostic; // empty on success
};

/// What a completed (or attempted) run looked like: configuration
/// fingerprint, wall-clock timestamp, tool version, and one status per job.
struct RunManifest {
    std::string config_hash;
    std::string timestamp;
    std::string tool_version;
    std::vector<JobStatus> jobs;

    const JobStatus* find(const JobKey& key) const {
        for (const auto& status : jobs)
            if (status.key == key) return &status;
        return nullptr;
    }
};

/**
 * Directory layout for run artifacts: records/<dataset>-H<horizon>.ndjson
 * holds append-only newline-delimited records; run-manifest.json tracks job
 * completion; labels.json (optional) carries per-case regimes and selector
 * choices; report/ receives the analyze bundle.
 */
class ResultsStore {
public:
    explicit ResultsStore(std::string dir) : dir_(std::move(dir)) {}

    const std::string& dir() const { return dir_; }
    std::string records_dir() const { return dir_ + "/records"; }
    std::string manifest_path() const { return dir_ + "/run-manifest.json"; }
    std::string labels_path() const { return dir_ + "/labels.json"; }
    std::string report_dir() const { return dir_ + "/report"; }

    std::string record_path(const std::string& dataset, int horizon) const {
        return records_dir() + "/" + dataset + "-H" + std::to_string(horizon) + ".ndjson";
    }

    void ensure_layout() const {
        std::filesystem::create_directories(records_dir());
    }

    void append(const BacktestRecord& rec) const {
        ensure_layout();
        std::ofstream file(record_path(rec.dataset, rec.horizon), std::ios::app);
        if (!file)
            fail(ErrorCode::FileNotFound,
                 "cannot append to " + record_path(rec.dataset, rec.horizon));
        file << record_to_json(rec).dump() << "\n";
    }

    /// Every record in the store; duplicate keys are resolved later by
    /// CaseTable::from_records (last record wins).
    std::vector<BacktestRecord> load_records() const {
        std::vector<BacktestRecord> records;
        if (!std::filesystem::exists(records_dir())) return records;
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(records_dir()))
            if (entry.path().extension() == ".ndjson") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            std::ifstream file(path);
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(file, line)) {
                ++line_no;
                if (line.empty()) continue;
                try {
                    records.push_back(record_from_json(nlohmann::json::parse(line)));
                } catch (const nlohmann::json::exception& e) {
                    fail(ErrorCode::ParseError, path.string() + " line " +
                                                    std::to_string(line_no) + ": " +
                                                    e.what());
                }
            }
        }
        return records;
    }

    void clear_records() const {
        if (std::filesystem::exists(records_dir()))
            std::filesystem::remove_all(records_dir());
    }

    void write_manifest(const RunManifest& manifest) const {
        std::filesystem::create_directories(dir_);
        nlohmann::json j;
        j["config_hash"] = manifest.config_hash;
        j["timestamp"] = manifest.timestamp;
        j["tool_version"] = manifest.tool_version;
        j["jobs"] = nlohmann::json::array();
        for (const auto& status : manifest.jobs)
            j["jobs"].push_back({{"dataset", status.key.dataset},
                                 {"horizon", status.key.horizon},
                                 {"model", to_string(status.key.model)},
                                 {"done", status.done},
                                 {"diagnostic", status.diagnostic}});
        std::ofstream file(manifest_path());
        if (!file) fail(ErrorCode::FileNotFound, "cannot write " + manifest_path());
        file << j.dump(2) << "\n";
    }

    std::optional<RunManifest> read_manifest() const {
        std::ifstream file(manifest_path());
        if (!file) return std::nullopt;
        nlohmann::json j;
        try {
            file >> j;
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, manifest_path() + ": " + e.what());
        }
        RunManifest manifest;
        manifest.config_hash = j.value("config_hash", "");
        manifest.timestamp = j.value("timestamp", "");
        manifest.tool_version = j.value("tool_version", "");
        if (j.contains("jobs"))
            for (const auto& js : j.at("jobs")) {
                JobStatus status;
                status.key.dataset = js.at("dataset").get<std::string>();
                status.key.horizon = js.at("horizon").get<int>();
                status.key.model = parse_model_id(js.at("model").get<std::string>());
                status.done = js.at("done").get<bool>();
                status.diagnostic = js.value("diagnostic", "");
                manifest.jobs.push_back(std::move(status));
            }
        return manifest;
    }

    /// Per-case regime labels and selector choices, keyed by case label.
    void write_labels(const nlohmann::json& labels) const {
        std::filesystem::create_directories(dir_);
        std::ofstream file(labels_path());
        if (!file) fail(ErrorCode::FileNotFound, "cannot write " + labels_path());
        file << labels.dump(2) << "\n";
    }

    std::optional<nlohmann::json> read_labels() const {
        std::ifstream file(labels_path());
        if (!file) return std::nullopt;
        try {
            nlohmann::json j;
            file >> j;
            return j;
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, labels_path() + ": " + e.what());
        }
    }

private:
    std::string dir_;
};

} // namespace rb::io
