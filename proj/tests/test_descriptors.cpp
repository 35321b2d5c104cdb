#include <chrono>
#include <cmath>
#include <span>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "rb/descriptors.hpp"
#include "rb/synthetic.hpp"

using namespace rb;

namespace {
std::span<const double> view(const std::vector<double>& v) { return {v}; }

std::vector<double> shifted(std::vector<double> x, double c) {
    for (auto& v : x) v += c;
    return x;
}

std::vector<double> scaled(std::vector<double> x, double c) {
    for (auto& v : x) v *= c;
    return x;
}
} // namespace

// ---------------------------------------------------------------------------
// decompose

TEST_CASE("decompose leaves no residual on a pure line", "[decompose]") {
    const auto x = synthetic::line(64, 2.0, 0.5);
    const auto d = decompose(view(x), std::nullopt);
    for (double r : d.residual) CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("decompose captures a pure sine with known period", "[decompose]") {
    const auto x = synthetic::sine(64, 8.0);
    const auto d = decompose(view(x), 8);
    CHECK(stats::variance(view(d.residual)) < 1e-6 * stats::variance(view(x)));
}

TEST_CASE("decompose passes i.i.d. noise through to the residual", "[decompose]") {
    const auto x = synthetic::white_noise(2000, 13);
    const auto d = decompose(view(x), std::nullopt);
    const double ratio = stats::variance(view(d.residual)) / stats::variance(view(x));
    CHECK(ratio > 0.75);
    CHECK(ratio < 1.25);
}

TEST_CASE("decompose components always sum to the input", "[decompose][property]") {
    Rng rng(101);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 20 + rng.index(200);
        std::vector<double> x(n);
        for (auto& v : x) v = 5.0 * rng.gaussian();
        const bool seasonal = rep % 2 == 0 && n >= 24;
        const auto d = decompose(view(x), seasonal ? std::optional<int>(12) : std::nullopt);
        REQUIRE(d.trend.size() == n);
        REQUIRE(d.seasonal.size() == n);
        REQUIRE(d.residual.size() == n);
        for (std::size_t t = 0; t < n; ++t) {
            const double sum = d.trend[t] + d.seasonal[t] + d.residual[t];
            CHECK(std::abs(sum - x[t]) < 1e-9);
        }
    }
}

// ---------------------------------------------------------------------------
// r1 trend strength

TEST_CASE("trend strength on small closed-form cases", "[descriptors]") {
    const std::vector<double> up = {1, 2, 3, 4, 5};
    const std::vector<double> down = {5, 4, 3, 2, 1};
    CHECK(trend_strength(view(up)) == Catch::Approx(0.4).margin(1e-12));
    CHECK(trend_strength(view(down)) == Catch::Approx(0.4).margin(1e-12));

    const std::vector<double> flat(10, 3.0);
    CHECK(trend_strength(view(flat)) == 0.0);
}

// ---------------------------------------------------------------------------
// r2 spectral concentration

TEST_CASE("single sinusoid concentrates the spectrum", "[descriptors]") {
    const auto x = synthetic::sine(64, 8.0);
    CHECK(seasonality_strength(view(x)) >= 0.99);
}

TEST_CASE("constant series has empty spectrum", "[descriptors]") {
    const std::vector<double> x(32, 4.0);
    CHECK(seasonality_strength(view(x)) == 0.0);
}

TEST_CASE("white noise spreads power across bins", "[descriptors]") {
    const auto x = synthetic::white_noise(512, 11);
    const double r2 = seasonality_strength(view(x));
    CHECK(r2 < 0.10);
    CHECK(r2 == Catch::Approx(0.0266145153).margin(1e-8));
}

// ---------------------------------------------------------------------------
// r3 noise level

TEST_CASE("noiseless line has zero noise level", "[descriptors]") {
    const auto x = synthetic::line(100, 1.0, 1.0);
    CHECK(noise_level(view(x), std::nullopt) < 1e-9);
}

TEST_CASE("pure noise has noise level near one", "[descriptors]") {
    const auto x = synthetic::white_noise(2000, 13);
    const double r3 = noise_level(view(x), std::nullopt);
    CHECK(r3 > 0.75);
    CHECK(r3 < 1.25);
}

TEST_CASE("sine plus noise recovers the noise share", "[descriptors]") {
    // Unit-amplitude sine has variance 0.5; noise std 0.5 adds variance 0.25,
    // so the noise share of total variance is 1/3.
    const auto x = synthetic::sine_plus_noise(512, 8, 1.0, 0.5, 21);
    const double r3 = noise_level(view(x), 8);
    CHECK(r3 == Catch::Approx(1.0 / 3.0).margin(0.08));
    CHECK(r3 == Catch::Approx(0.2646980051).margin(1e-8));
}

// ---------------------------------------------------------------------------
// r5 intermittency

TEST_CASE("intermittency counts near-zero observations", "[descriptors]") {
    const std::vector<double> zeros(20, 0.0);
    CHECK(intermittency(view(zeros), 1e-8) == 1.0);

    const std::vector<double> half = {0, 5, 0, 5};
    CHECK(intermittency(view(half), 0.5) == 0.5);

    const std::vector<double> positive = {2, 3, 4, 5};
    CHECK(intermittency(view(positive), 0.5) == 0.0);

    // Default epsilon is relative to the sample std, floored at 1e-8.
    const std::vector<double> constant(10, 5.0);
    CHECK(intermittency(view(constant), 0.0) == 0.0);
}

// ---------------------------------------------------------------------------
// extraction

TEST_CASE("extraction composes the individual descriptors", "[descriptors]") {
    auto values = synthetic::sine_plus_noise(480, 24, 2.0, 0.4, 31);
    for (std::size_t t = 0; t < values.size(); ++t) values[t] += 0.01 * double(t);
    const auto ts = TimeSeries::from_values("composite", values, 24);

    const auto d = extract_descriptors(ts);
    const auto x = view(ts.values);
    CHECK(d.r1_trend == Catch::Approx(trend_strength(x)).margin(1e-12));
    CHECK(d.r2_seasonality == Catch::Approx(seasonality_strength(x)).margin(1e-12));
    CHECK(d.r3_noise == Catch::Approx(noise_level(x, 24)).margin(1e-12));
    CHECK(d.r4_stationarity_evidence == Catch::Approx(adf_test(x).r4).margin(1e-12));
    CHECK(d.r5_intermittency == Catch::Approx(intermittency(x, 0.0)).margin(1e-12));
    const auto breaks = structural_breaks(x);
    CHECK(d.r6_break_density ==
          Catch::Approx(double(breaks.indices.size()) / double(values.size())).margin(1e-12));
    CHECK(d.acf1 == Catch::Approx(stats::acf1(x)).margin(1e-12));
    CHECK_FALSE(d.normalized);
}

TEST_CASE("extraction on a pure line", "[descriptors]") {
    const auto ts = TimeSeries::from_values("line", synthetic::line(100, 1.0, 1.0));
    const auto d = extract_descriptors(ts);
    CHECK(d.r1_trend > 0.0);
    CHECK(d.r3_noise < 1e-6);
    CHECK(d.r5_intermittency == 0.0);
    // A mean-removed ramp concentrates power in the lowest bins, and a
    // monotone trend registers as a sequence of mean shifts; both values are
    // frozen from the implementation rather than assumed small.
    CHECK(d.r2_seasonality == Catch::Approx(0.8278905018).margin(1e-8));
    CHECK(d.r6_break_density == Catch::Approx(0.15).margin(1e-12));
}

TEST_CASE("extraction aborts on an all-zero series", "[descriptors]") {
    const auto ts = TimeSeries::from_values("zeros", std::vector<double>(100, 0.0));
    try {
        extract_descriptors(ts);
        FAIL("expected DegenerateSeries");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSeries);
    }
}

TEST_CASE("descriptor ranges hold on random series", "[descriptors][property]") {
    Rng rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        auto values = synthetic::ar1(60 + rng.index(200), 0.5, rng.mix(77, rep));
        const auto ts = TimeSeries::from_values("random", values);
        const auto d = extract_descriptors(ts);
        CHECK(d.r1_trend >= 0.0);
        CHECK(d.r3_noise >= 0.0);
        for (double v : {d.r2_seasonality, d.r4_stationarity_evidence, d.r5_intermittency,
                         d.r6_break_density}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(d.acf1 >= -1.0);
        CHECK(d.acf1 <= 1.0);
    }
}

// ---------------------------------------------------------------------------
// invariance properties

TEST_CASE("shift invariance", "[descriptors][property]") {
    Rng rng(91);
    for (int rep = 0; rep < 25; ++rep) {
        const auto base = synthetic::sine_plus_noise(128 + rng.index(128), 12, 1.5, 0.5,
                                                     rng.mix(5, rep));
        const double c = 200.0 * rng.uniform() - 100.0;
        const auto ts0 = TimeSeries::from_values("base", base, 12);
        const auto ts1 = TimeSeries::from_values("shifted", shifted(base, c), 12);
        const auto a = extract_descriptors(ts0);
        const auto b = extract_descriptors(ts1);
        CHECK(b.r1_trend == Catch::Approx(a.r1_trend).margin(1e-9));
        CHECK(b.r2_seasonality == Catch::Approx(a.r2_seasonality).margin(1e-9));
        CHECK(b.r3_noise == Catch::Approx(a.r3_noise).margin(1e-9));
        CHECK(b.r4_stationarity_evidence ==
              Catch::Approx(a.r4_stationarity_evidence).margin(1e-9));
        CHECK(b.r6_break_density == Catch::Approx(a.r6_break_density).margin(1e-9));
        CHECK(b.acf1 == Catch::Approx(a.acf1).margin(1e-9));
        // r5 thresholds absolute magnitude, so it is deliberately not
        // shift-invariant; no assertion on it here.
    }
}

TEST_CASE("scale behavior", "[descriptors][property]") {
    Rng rng(92);
    for (int rep = 0; rep < 25; ++rep) {
        const auto base = synthetic::sine_plus_noise(128 + rng.index(128), 12, 1.5, 0.5,
                                                     rng.mix(6, rep));
        const double c = 0.1 + 9.9 * rng.uniform();
        const auto ts0 = TimeSeries::from_values("base", base, 12);
        const auto ts1 = TimeSeries::from_values("scaled", scaled(base, c), 12);
        const auto a = extract_descriptors(ts0);
        const auto b = extract_descriptors(ts1);
        CHECK(b.r1_trend == Catch::Approx(a.r1_trend / c).margin(1e-9));
        CHECK(b.r2_seasonality == Catch::Approx(a.r2_seasonality).margin(1e-9));
        CHECK(b.r3_noise == Catch::Approx(a.r3_noise).margin(1e-9));
        CHECK(b.r4_stationarity_evidence ==
              Catch::Approx(a.r4_stationarity_evidence).margin(1e-9));
        CHECK(b.r5_intermittency == Catch::Approx(a.r5_intermittency).margin(1e-9));
        CHECK(b.r6_break_density == Catch::Approx(a.r6_break_density).margin(1e-9));
        CHECK(b.acf1 == Catch::Approx(a.acf1).margin(1e-9));
    }
}

// ---------------------------------------------------------------------------
// normalizer

TEST_CASE("normalizer maps training range onto the unit interval", "[descriptors]") {
    DescriptorVector lo;
    lo.set_components({0, 0, 0, 0, 0, 0});
    DescriptorVector hi;
    hi.set_components({2, 2, 2, 2, 2, 2});
    const std::vector<DescriptorVector> train = {lo, hi};
    const auto norm = fit_normalizer(train);

    DescriptorVector mid;
    mid.set_components({1, 1, 1, 1, 1, 1});
    const auto out = apply_normalizer(mid, norm);
    CHECK(out.normalized);
    for (double v : out.components()) CHECK(v == Catch::Approx(0.5));

    DescriptorVector above;
    above.set_components({3, 3, 3, 3, 3, 3});
    for (double v : apply_normalizer(above, norm).components()) CHECK(v == 1.0);

    DescriptorVector below;
    below.set_components({-1, -1, -1, -1, -1, -1});
    for (double v : apply_normalizer(below, norm).components()) CHECK(v == 0.0);
}

TEST_CASE("single training vector collapses to zero", "[descriptors]") {
    DescriptorVector only;
    only.set_components({0.3, 0.6, 1.2, 0.9, 0.1, 0.05});
    const std::vector<DescriptorVector> train = {only};
    const auto norm = fit_normalizer(train);
    for (double v : apply_normalizer(only, norm).components()) CHECK(v == 0.0);
}

TEST_CASE("normalizer refuses an empty training set", "[descriptors]") {
    const std::vector<DescriptorVector> empty;
    try {
        fit_normalizer(empty);
        FAIL("expected EmptyTrainingSet");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyTrainingSet);
    }
}

TEST_CASE("normalized vectors stay inside the unit cube", "[descriptors][property]") {
    Rng rng(71);
    std::vector<DescriptorVector> train(12);
    for (auto& v : train) {
        std::array<double, kDescriptorDim> c{};
        for (auto& ci : c) ci = 10.0 * rng.gaussian();
        v.set_components(c);
    }
    const auto norm = fit_normalizer(train);
    for (int rep = 0; rep < 100; ++rep) {
        DescriptorVector probe;
        std::array<double, kDescriptorDim> c{};
        for (auto& ci : c) ci = 30.0 * rng.gaussian();
        probe.set_components(c);
        for (double v : apply_normalizer(probe, norm).components()) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

// ---------------------------------------------------------------------------
// complexity budget

TEST_CASE("extraction stays fast on 100k points", "[descriptors][timing]") {
    auto values = synthetic::sine_plus_noise(100000, 24, 1.0, 0.5, 9);
    for (std::size_t t = 0; t < values.size(); ++t) values[t] += 1e-4 * double(t);
    const auto ts = TimeSeries::from_values("big", values, 24);
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = extract_descriptors(ts);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    CHECK(d.r2_seasonality > 0.0);
    CHECK(elapsed.count() < 2.0);
}
