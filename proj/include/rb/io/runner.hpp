#pragma once

#include <atomic>
#include <cstdint>
#include <ctime>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rb/backtest.hpp"
#include "rb/errors.hpp"
#include "rb/forecaster.hpp"
#include "rb/io/config.hpp"
#include "rb/io/results_store.hpp"
#include "rb/rng.hpp"
#include "rb/splits.hpp"
#include "rb/timeseries.hpp"

namespace rb::io {

inline constexpr const char* kToolVersion = "0.1.0";

struct Job {
    std::string dataset;
    int horizon = 1;
    ModelId model = ModelId::Naive;

    JobKey key() const { return {dataset, horizon, model}; }
};

/// Full cross product in a fixed order: datasets as configured, horizons as
/// configured, models ascending by id.
inline std::vector<Job> job_grid(const HarnessConfig& config) {
    std::vector<Job> jobs;
    for (const DatasetSpec& spec : config.datasets)
        for (int horizon : config.horizons)
            for (ModelId model : kAllModels) jobs.push_back({spec.name, horizon, model});
    return jobs;
}

/// Seed for one job's model, derived from the job identity alone so results
/// do not depend on scheduling order or worker count.
inline std::uint64_t job_seed(std::uint64_t global_seed, const Job& job) {
    const std::uint64_t name_hash = fnv1a64(job.dataset);
    const std::uint64_t mixed = Rng::mix(global_seed, name_hash);
    return Rng::mix(mixed, (static_cast<std::uint64_t>(job.horizon) << 8) +
                               static_cast<std::uint64_t>(job.model));
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

struct RunSummary {
    RunManifest manifest;
    std::size_t executed = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;
};

/**
 * Executes every configured (dataset, horizon, model) backtest job on a
 * worker pool. A completed manifest with the same config hash lets the run
 * skip finished jobs; `force` (or a changed config) wipes the stored records
 * and starts over. Workers share only the atomic job cursor; record appends
 * and manifest status updates happen under one mutex.
 */
inline RunSummary run_backtests(const HarnessConfig& config,
                                const std::map<std::string, TimeSeries>& datasets,
                                ResultsStore& store, int workers, bool force,
                                std::ostream& err) {
    const std::vector<Job> jobs = job_grid(config);
    const std::string hash = config_hash(config);

    std::set<std::string> already_done;
    if (force) {
        store.clear_records();
    } else if (auto prior = store.read_manifest(); prior && prior->config_hash == hash) {
        for (const JobStatus& status : prior->jobs)
            if (status.done) already_done.insert(status.key.label());
    } else if (prior) {
        // Stale results from a different configuration cannot be mixed in.
        store.clear_records();
    }

    RunSummary summary;
    summary.manifest.config_hash = hash;
    summary.manifest.timestamp = utc_timestamp();
    summary.manifest.tool_version = kToolVersion;
    summary.manifest.jobs.resize(jobs.size());

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        summary.manifest.jobs[i].key = jobs[i].key();
        if (already_done.count(jobs[i].key().label())) {
            summary.manifest.jobs[i].done = true;
            ++summary.skipped;
        } else {
            pending.push_back(i);
        }
    }

    store.ensure_layout();

    std::mutex gate;
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const std::size_t slot = cursor.fetch_add(1);
            if (slot >= pending.size()) return;
            const std::size_t i = pending[slot];
            const Job& job = jobs[i];
            try {
                const TimeSeries& series = datasets.at(job.dataset);
                const SplitPlan plan = rolling_origin_splits(
                    series.size(), static_cast<std::size_t>(job.horizon),
                    static_cast<std::size_t>(config.folds),
                    static_cast<std::size_t>(config.min_train));
                ModelConfig model_config = config.model;
                model_config.seed = job_seed(config.seed, job);
                BacktestRecord record = backtest(series, job.model, model_config, plan);
                record.dataset = job.dataset;
                record.horizon = job.horizon;
                std::lock_guard<std::mutex> lock(gate);
                store.append(record);
                summary.manifest.jobs[i].done = true;
                ++summary.executed;
            } catch (const Error& e) {
                std::lock_guard<std::mutex> lock(gate);
                summary.manifest.jobs[i].done = false;
                summary.manifest.jobs[i].diagnostic = e.what();
                ++summary.failed;
                ++summary.executed;
                err << "job " << job.key().label() << " failed: " << e.what() << "\n";
            }
        }
    };

    const std::size_t n_workers =
        std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(pending.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < n_workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();

    store.write_manifest(summary.manifest);
    return summary;
}

} // namespace rb::io
