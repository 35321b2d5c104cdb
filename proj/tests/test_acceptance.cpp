// Acceptance gate: one check per release criterion, each with a wall-clock
// budget. Prints one [PASS]/[FAIL] line per criterion and exits nonzero if
// any of them fails, so CI can gate on this binary alone.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rb/adf.hpp"
#include "rb/analysis.hpp"
#include "rb/backtest.hpp"
#include "rb/changepoint.hpp"
#include "rb/cli.hpp"
#include "rb/descriptors.hpp"
#include "rb/fixtures.hpp"
#include "rb/models/arima.hpp"
#include "rb/models/ets.hpp"
#include "rb/models/linear_ar.hpp"
#include "rb/models/naive.hpp"
#include "rb/rng.hpp"
#include "rb/selector.hpp"
#include "rb/splits.hpp"
#include "rb/synthetic.hpp"

namespace {

namespace fs = std::filesystem;

std::span<const double> view(const std::vector<double>& v) { return {v}; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Collects failure messages; a criterion passes when none accumulate.
struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, std::string what) {
        if (!ok) failures.push_back(std::move(what));
    }

    void close(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol))
            failures.push_back(what + ": got " + num(got) + ", want " + num(want) +
                               " within " + num(tol));
    }
};

// ---------------------------------------------------------------------------
// 1. Friedman test on the benchmark RMSE table

void friedman_on_benchmark(Checker& t) {
    const rb::FriedmanResult result =
        rb::friedman_test(rb::fixtures::benchmark_rmse_table());

    const std::vector<double> want_sums = {9.0, 14.0, 9.0, 8.0};
    t.require(result.rank_sums.size() == want_sums.size(),
              "expected 4 rank sums, got " + std::to_string(result.rank_sums.size()));
    for (std::size_t j = 0; j < want_sums.size() && j < result.rank_sums.size(); ++j)
        t.close(result.rank_sums[j], want_sums[j], 1e-12,
                std::string("rank sum for ") + rb::to_string(result.models[j]));
    t.close(result.statistic, 3.3, 1e-9, "chi-square statistic");
    t.require(result.dof == 3, "degrees of freedom: got " + std::to_string(result.dof));
    t.close(result.p_value, 0.3476, 1e-3, "p-value");
}

// ---------------------------------------------------------------------------
// 2. Relative RMSE reproduces the benchmark ratio table

void relative_matches_benchmark(Checker& t) {
    const rb::CaseTable rel = rb::relative_rmse(rb::fixtures::benchmark_rmse_table());
    const rb::CaseTable want = rb::fixtures::benchmark_relative_table();

    t.require(rel.n_cases() == want.n_cases() && rel.n_models() == want.n_models(),
              "relative table shape mismatch");
    for (std::size_t i = 0; i < want.n_cases(); ++i)
        for (std::size_t j = 0; j < want.n_models(); ++j)
            t.close(rel.values[i][j], want.values[i][j], 1e-2,
                    want.cases[i].label() + " / " +
                        std::string(rb::to_string(want.models[j])));
}

// ---------------------------------------------------------------------------
// 3. Rule-selection accuracy per regime on the labeled benchmark

void selection_accuracy_by_regime(Checker& t) {
    const rb::fixtures::LabeledTable labeled = rb::fixtures::labeled_benchmark_table();
    const rb::SelectionAccuracyResult acc =
        rb::selection_accuracy(labeled.selections, labeled.table, labeled.regimes);

    t.require(acc.per_regime.size() == 3,
              "expected 3 regime buckets, got " + std::to_string(acc.per_regime.size()));
    if (acc.per_regime.size() == 3) {
        const struct {
            rb::RegimeLabel regime;
            double accuracy;
            std::size_t n;
        } want[] = {
            {rb::RegimeLabel::LowNoise, 0.25, 4},
            {rb::RegimeLabel::HighNoise, 0.0, 2},
            {rb::RegimeLabel::Mixed, 0.0, 2},
        };
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& got = acc.per_regime[k];
            const std::string name = rb::to_string(want[k].regime);
            t.require(got.regime == want[k].regime, "regime order: bucket " +
                                                        std::to_string(k) + " is not " + name);
            t.close(got.accuracy, want[k].accuracy, 1e-12, name + " accuracy");
            t.require(got.n == want[k].n, name + " case count: got " +
                                              std::to_string(got.n) + ", want " +
                                              std::to_string(want[k].n));
        }
    }
    t.close(acc.overall, 0.125, 1e-12, "overall accuracy");
    t.require(acc.n_cases == 8, "total cases: got " + std::to_string(acc.n_cases));
}

// ---------------------------------------------------------------------------
// 4. Best single model overall, and per-dataset winners from raw records

void best_model_and_winners(Checker& t) {
    const rb::ModelId best = rb::best_single_model(rb::fixtures::benchmark_relative_table());
    t.require(best == rb::ModelId::Arima,
              std::string("best single model: got ") + rb::to_string(best) +
                  ", want ARIMA");

    std::map<std::string, std::vector<rb::BacktestRecord>> by_dataset;
    for (const rb::BacktestRecord& rec : rb::fixtures::benchmark_records())
        by_dataset[rec.dataset].push_back(rec);

    const std::pair<const char*, rb::ModelId> want[] = {
        {"Tetuan", rb::ModelId::Naive},
        {"Tourism", rb::ModelId::Arima},
        {"Energy", rb::ModelId::Naive},
        {"PGCB", rb::ModelId::RandomForest},
    };
    for (const auto& [dataset, model] : want) {
        const auto it = by_dataset.find(dataset);
        if (it == by_dataset.end()) {
            t.failures.push_back(std::string("no records for dataset ") + dataset);
            continue;
        }
        const rb::ModelId winner = rb::best_record(it->second).model_id;
        t.require(winner == model, std::string(dataset) + " winner: got " +
                                       rb::to_string(winner) + ", want " +
                                       rb::to_string(model));
    }
}

// ---------------------------------------------------------------------------
// 5. Forecasters recover the processes they are built for

void model_recovery(Checker& t) {
    {
        rb::ArimaForecaster model;
        const auto x = rb::synthetic::ar1(2000, 0.7, 9);
        model.fit(view(x));
        t.require(model.d() == 0,
                  "ARIMA should not difference a stationary AR(1); d=" +
                      std::to_string(model.d()));
        if (model.ar_coefficients().empty())
            t.failures.push_back("ARIMA found no AR term on an AR(1) series");
        else
            t.close(model.ar_coefficients()[0], 0.7, 0.05, "recovered AR(1) coefficient");
    }
    {
        std::vector<double> y = {8.0};
        while (y.size() < 16) y.push_back(0.5 * y.back());
        rb::LinearArForecaster model(1);
        model.fit(view(y));
        t.close(model.coefficients()[0], 0.0, 1e-6, "linear AR intercept");
        t.close(model.coefficients()[1], 0.5, 1e-6, "linear AR lag-1 weight");
    }
    {
        rb::EtsForecaster model;
        const auto x = rb::synthetic::line(40, 1.0, 2.0);
        const auto pred = model.fit_predict(view(x), 3);
        const double want[] = {81.0, 83.0, 85.0};
        for (std::size_t i = 0; i < 3; ++i)
            t.close(pred[i], want[i], 1e-3 * std::abs(want[i]),
                    "ETS on a line, step " + std::to_string(i + 1));
    }
    {
        const std::array<double, 4> pattern = {3.0, 7.0, 1.0, 5.0};
        std::vector<double> x;
        for (int rep = 0; rep < 40; ++rep)
            x.insert(x.end(), pattern.begin(), pattern.end());
        rb::EtsForecaster model(4);
        const auto pred = model.fit_predict(view(x), 4);
        for (std::size_t i = 0; i < 4; ++i)
            t.close(pred[i], pattern[i], 1e-3 * std::abs(pattern[i]),
                    "ETS on a period-4 cycle, step " + std::to_string(i + 1));
    }
    {
        const auto x = rb::synthetic::random_walk(500, 7);
        rb::ArimaForecaster restricted(0, 0);
        const auto a = restricted.fit_predict(view(x), 5);
        t.require(restricted.d() == 1,
                  "ARIMA(0,d,0) on a random walk should difference once; d=" +
                      std::to_string(restricted.d()));
        rb::NaiveForecaster naive;
        const auto b = naive.fit_predict(view(x), 5);
        for (std::size_t i = 0; i < 5; ++i)
            t.close(a[i], b[i], 1e-9, "ARIMA(0,1,0) vs naive, step " + std::to_string(i + 1));
    }
}

// ---------------------------------------------------------------------------
// 6. Descriptors agree with constructed-series oracles

void descriptor_oracles(Checker& t) {
    const auto line = rb::synthetic::line(100, 1.0, 1.0);
    const double r3 = rb::noise_level(view(line), std::nullopt);
    t.require(r3 < 1e-9, "noise level of a pure line: got " + num(r3));

    const auto sine = rb::synthetic::sine(64, 8.0);
    const double r2 = rb::seasonality_strength(view(sine));
    t.require(r2 >= 0.99, "seasonal strength of a pure sine: got " + num(r2));

    const auto step = rb::synthetic::step(200, 0.0, 10.0, 0.1, 5);
    const rb::ChangePoints cp = rb::structural_breaks(view(step));
    t.require(cp.indices.size() == 1, "breaks found on a single level shift: got " +
                                          std::to_string(cp.indices.size()));
    if (cp.indices.size() == 1) {
        const auto idx = cp.indices.front();
        t.require(idx >= 95 && idx <= 105,
                  "break location: got " + std::to_string(idx) + ", want 100 +/- 5");
    }

    const rb::AdfResult stationary = rb::adf_test(view(rb::synthetic::ar1(500, 0.2, 3)));
    const rb::AdfResult wandering = rb::adf_test(view(rb::synthetic::random_walk(500, 3)));
    t.require(stationary.r4 > wandering.r4,
              "stationarity evidence ordering: AR(1) " + num(stationary.r4) +
                  " vs random walk " + num(wandering.r4));
    t.require(stationary.r4 > 0.99, "AR(1) stationarity evidence: got " + num(stationary.r4));
    t.require(wandering.r4 < 0.70,
              "random-walk stationarity evidence: got " + num(wandering.r4));
}

// ---------------------------------------------------------------------------
// 7. Analytic selector gradients match central finite differences

void gradient_check(Checker& t) {
    auto make_r = [](const std::array<double, rb::kDescriptorDim>& comp) {
        rb::DescriptorVector r;
        r.set_components(comp);
        return r;
    };
    auto score_at = [&](const std::array<double, rb::kDescriptorDim>& comp,
                        const rb::CompatibilityProfile& p, rb::SelectorMode mode) {
        return rb::profile_score(make_r(comp), p, mode);
    };

    const rb::SelectorMode modes[] = {rb::SelectorMode::Linear, rb::SelectorMode::Logistic,
                                      rb::SelectorMode::Distance};
    const double h = 1e-6;
    rb::Rng rng(2024);
    std::array<int, 3> checked{};

    for (int draw = 0; draw < 500; ++draw) {
        rb::CompatibilityProfile p;
        std::array<double, rb::kDescriptorDim> comp{};
        for (std::size_t i = 0; i < rb::kDescriptorDim; ++i) {
            comp[i] = rng.uniform();
            p.weights[i] = 2.0 * rng.uniform() - 1.0;
            p.prototype[i] = rng.uniform();
        }
        for (std::size_t m = 0; m < 3; ++m) {
            const rb::SelectorMode mode = modes[m];
            // The distance score is not differentiable at the prototype.
            if (mode == rb::SelectorMode::Distance &&
                -rb::distance_compat(make_r(comp), p.prototype) <= 1e-3)
                continue;
            const auto grad = rb::sensitivity(make_r(comp), p, mode);
            double err2 = 0.0;
            double norm2 = 0.0;
            for (std::size_t i = 0; i < rb::kDescriptorDim; ++i) {
                auto lo = comp;
                auto hi = comp;
                lo[i] -= h;
                hi[i] += h;
                const double fd = (score_at(hi, p, mode) - score_at(lo, p, mode)) / (2.0 * h);
                err2 += (fd - grad[i]) * (fd - grad[i]);
                norm2 += grad[i] * grad[i];
            }
            if (!(std::sqrt(err2) <= 1e-5 * std::max(1.0, std::sqrt(norm2))))
                t.failures.push_back("draw " + std::to_string(draw) + ", mode " +
                                     rb::to_string(mode) + ": gradient error " +
                                     num(std::sqrt(err2)));
            ++checked[m];
        }
    }
    t.require(checked[0] == 500 && checked[1] == 500 && checked[2] >= 495,
              "expected ~500 checks per mode, got " + std::to_string(checked[0]) + "/" +
                  std::to_string(checked[1]) + "/" + std::to_string(checked[2]));
}

// ---------------------------------------------------------------------------
// 8. Structural invariants over randomly generated instances

rb::CaseTable random_table(rb::Rng& rng) {
    rb::CaseTable table;
    const std::size_t n_cases = 2 + rng.index(7);
    const std::size_t n_models = 2 + rng.index(5);
    table.models.assign(rb::kAllModels.begin(), rb::kAllModels.begin() + n_models);
    for (std::size_t i = 0; i < n_cases; ++i) {
        table.cases.push_back({"case" + std::to_string(i), 1});
        std::vector<double> row(n_models);
        for (double& v : row) v = 0.1 + 9.9 * rng.uniform();
        table.values.push_back(std::move(row));
    }
    return table;
}

void invariants(Checker& t) {
    { // every constructible rolling-origin layout passes the leakage audit
        rb::Rng rng(7);
        int accepted = 0;
        int attempts = 0;
        while (accepted < 200 && attempts < 4000) {
            ++attempts;
            const std::size_t length = 40 + rng.index(400);
            const std::size_t horizon = 1 + rng.index(12);
            const std::size_t folds = 1 + rng.index(6);
            const std::size_t min_train = 10 + rng.index(40);
            rb::SplitPlan plan;
            try {
                plan = rb::rolling_origin_splits(length, horizon, folds, min_train);
            } catch (const rb::Error&) {
                continue; // layout impossible for this draw; redraw
            }
            ++accepted;
            try {
                rb::audit_split_plan(plan, length);
            } catch (const rb::Error& e) {
                t.failures.push_back("audit rejected a rolling-origin plan (length " +
                                     std::to_string(length) + "): " + e.what());
            }
        }
        t.require(accepted >= 200,
                  "only " + std::to_string(accepted) + " of 200 split instances drawn");
    }

    { // pairwise wins are complementary with a 0.5 diagonal
        rb::Rng rng(11);
        for (int rep = 0; rep < 200; ++rep) {
            const rb::CaseTable table = random_table(rng);
            const rb::WinMatrix wm = rb::pairwise_win_matrix(table);
            for (std::size_t i = 0; i < wm.win.size(); ++i)
                for (std::size_t j = 0; j < wm.win.size(); ++j) {
                    const double got = wm.win[i][j];
                    const bool ok = i == j ? got == 0.5
                                           : std::abs(got + wm.win[j][i] - 1.0) <= 1e-12;
                    if (!ok)
                        t.failures.push_back("win matrix rep " + std::to_string(rep) +
                                             " cell (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") breaks complementarity");
                }
        }
    }

    { // the Friedman test is invariant under per-case monotone transforms
        rb::Rng rng(13);
        for (int rep = 0; rep < 200; ++rep) {
            const rb::CaseTable table = random_table(rng);
            const rb::FriedmanResult base = rb::friedman_test(table);

            rb::CaseTable warped = table;
            for (auto& row : warped.values) {
                const bool affine = rng.uniform() < 0.5;
                const double a = 0.5 + 2.5 * rng.uniform();
                const double b = 10.0 * (rng.uniform() - 0.5);
                for (double& v : row) v = affine ? a * v + b : std::exp(v / 4.0);
            }
            const rb::FriedmanResult after = rb::friedman_test(warped);

            bool sums_equal = base.rank_sums.size() == after.rank_sums.size();
            for (std::size_t j = 0; sums_equal && j < base.rank_sums.size(); ++j)
                sums_equal = std::abs(base.rank_sums[j] - after.rank_sums[j]) <= 1e-9;
            if (!sums_equal || std::abs(base.statistic - after.statistic) > 1e-9)
                t.failures.push_back("rep " + std::to_string(rep) +
                                     ": monotone transform changed the Friedman result");
        }
    }

    { // each row of a relative table has minimum exactly 1
        rb::Rng rng(17);
        for (int rep = 0; rep < 200; ++rep) {
            const rb::CaseTable rel = rb::relative_rmse(random_table(rng));
            for (std::size_t i = 0; i < rel.n_cases(); ++i) {
                const auto& row = rel.values[i];
                const double lo = *std::min_element(row.begin(), row.end());
                if (lo != 1.0)
                    t.failures.push_back("rep " + std::to_string(rep) + " row " +
                                         std::to_string(i) + ": minimum " + num(lo));
            }
        }
    }

    { // adding a constant to every score never changes the argmax
        rb::Rng rng(19);
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t k = 2 + rng.index(5);
            std::vector<rb::ScoredModel> scores;
            for (std::size_t j = 0; j < k; ++j)
                scores.push_back({rb::kAllModels[j], 10.0 * (rng.uniform() - 0.5)});
            const rb::ModelId before = rb::argmax_model(scores);
            const double shift = 200.0 * (rng.uniform() - 0.5);
            for (auto& s : scores) s.score += shift;
            const rb::ModelId after = rb::argmax_model(scores);
            if (before != after)
                t.failures.push_back("rep " + std::to_string(rep) + ": shift by " +
                                     num(shift) + " moved the argmax");
        }
    }
}

// ---------------------------------------------------------------------------
// 9. Synthetic suite end to end: identical seeds give identical reports

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_tool(const std::vector<std::string>& args, std::string* err_text) {
    std::vector<const char*> argv;
    argv.push_back("regimebench");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = rb::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text) *err_text = err.str();
    return code;
}

void end_to_end(Checker& t) {
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    const fs::path root =
        fs::temp_directory_path() / ("rb-acceptance-" + std::to_string(stamp));
    fs::remove_all(root);
    fs::create_directories(root);

    const fs::path fix_dir = root / "fixture";
    const fs::path res_serial = root / "results-serial";
    const fs::path res_parallel = root / "results-parallel";

    std::string err;
    auto step = [&](const std::vector<std::string>& args, const std::string& what) {
        const int code = run_tool(args, &err);
        if (code != 0)
            t.failures.push_back(what + " exited " + std::to_string(code) + ": " + err);
        return code == 0;
    };

    bool ok = step({"fixture", "synthetic-suite", "--out", fix_dir.string()},
                   "fixture generation");
    const std::string cfg = (fix_dir / "config.json").string();
    ok = ok &&
         step({"backtest", "--config", cfg, "--results", res_serial.string(), "--jobs", "1"},
              "serial backtest") &&
         step({"backtest", "--config", cfg, "--results", res_parallel.string(), "--jobs",
               "4"},
              "parallel backtest") &&
         step({"analyze", "--results", res_serial.string()}, "serial analyze") &&
         step({"analyze", "--results", res_parallel.string()}, "parallel analyze");

    if (ok) {
        const std::string serial = slurp(res_serial / "report" / "report.json");
        const std::string parallel = slurp(res_parallel / "report" / "report.json");
        t.require(!serial.empty(), "serial report.json is missing or empty");
        t.require(serial == parallel,
                  "reports from identical seeds differ between 1 and 4 workers");

        const nlohmann::json report = nlohmann::json::parse(serial);
        t.require(!report.at("selection").is_null(), "report carries no selection section");
        if (!report.at("selection").is_null()) {
            const double overall = report.at("selection").at("overall").get<double>();
            t.require(overall < 0.5,
                      "rule accuracy on the synthetic suite: got " + num(overall) +
                          ", expected below 0.5");
        }

        const auto& profile = report.at("per_horizon_mean_relative");
        const auto horizons = profile.at("horizons").get<std::vector<int>>();
        const auto rows =
            profile.at("mean_relative").get<std::vector<std::vector<double>>>();
        const auto h1 = std::find(horizons.begin(), horizons.end(), 1);
        const auto h24 = std::find(horizons.begin(), horizons.end(), 24);
        if (h1 == horizons.end() || h24 == horizons.end()) {
            t.failures.push_back("report lacks horizons 1 and 24");
        } else {
            const auto& short_row = rows[static_cast<std::size_t>(h1 - horizons.begin())];
            const auto& long_row = rows[static_cast<std::size_t>(h24 - horizons.begin())];
            const auto short_ranks = rb::average_ranks(short_row);
            const auto long_ranks = rb::average_ranks(long_row);
            int moved = 0;
            for (std::size_t j = 0; j < short_ranks.size(); ++j)
                if (short_ranks[j] != long_ranks[j]) ++moved;
            t.require(moved >= 1,
                      "model ranking is identical at horizons 1 and 24; expected at least "
                      "one model to change rank");
        }
    }

    std::error_code ignore;
    fs::remove_all(root, ignore);
}

// ---------------------------------------------------------------------------
// driver

struct Criterion {
    const char* name;
    double budget_seconds;
    void (*fn)(Checker&);
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"Friedman ranks on the benchmark table", 1.0, &friedman_on_benchmark},
        {"relative RMSE reproduces the benchmark ratios", 1.0, &relative_matches_benchmark},
        {"rule-selection accuracy per regime", 1.0, &selection_accuracy_by_regime},
        {"best single model and per-dataset winners", 1.0, &best_model_and_winners},
        {"forecasters recover known processes", 30.0, &model_recovery},
        {"descriptors match constructed-series oracles", 20.0, &descriptor_oracles},
        {"selector gradients match finite differences", 5.0, &gradient_check},
        {"structural invariants on random instances", 30.0, &invariants},
        {"synthetic suite end-to-end determinism", 180.0, &end_to_end},
    };

    int failed = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const Criterion& spec = criteria[i];
        Checker t;
        const auto start = std::chrono::steady_clock::now();
        try {
            spec.fn(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > spec.budget_seconds)
            t.failures.push_back("exceeded the " + num(spec.budget_seconds) +
                                 " s budget: took " + num(seconds) + " s");

        std::printf("[%s] %zu. %s (%.2f s)\n", t.failures.empty() ? "PASS" : "FAIL", i + 1,
                    spec.name, seconds);
        for (const std::string& msg : t.failures) std::printf("       - %s\n", msg.c_str());
        if (!t.failures.empty()) ++failed;
    }

    if (failed == 0)
        std::printf("all %zu criteria passed\n", std::size(criteria));
    else
        std::printf("%d of %zu criteria FAILED\n", failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
