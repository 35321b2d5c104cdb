#include <span>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "rb/adf.hpp"
#include "rb/synthetic.hpp"

using namespace rb;

namespace {
std::span<const double> view(const std::vector<double>& v) { return {v}; }
} // namespace

TEST_CASE("MacKinnon response surface matches reference values", "[adf]") {
    // Reference p-values from the constant-only response surface of a
    // well-known statistics package, evaluated at fixed t-statistics.
    const std::pair<double, double> points[] = {
        {-4.00, 0.0014105113}, {-3.00, 0.0348944003}, {-2.86, 0.0502010999},
        {-2.00, 0.2865730992}, {-1.61, 0.4779756526}, {-1.00, 0.7532643012},
        {0.00, 0.9585320861},  {2.00, 0.9986729512},
    };
    for (auto [tau, expected] : points) {
        INFO("tau = " << tau);
        CHECK(detail::mackinnon_p_const(tau) == Catch::Approx(expected).margin(1e-8));
    }
}

TEST_CASE("MacKinnon surface clamps outside its valid range", "[adf]") {
    CHECK(detail::mackinnon_p_const(-25.0) == 0.001);
    CHECK(detail::mackinnon_p_const(-19.0) == 0.001);
    CHECK(detail::mackinnon_p_const(2.74) == 0.999);
    CHECK(detail::mackinnon_p_const(5.0) == 0.999);
}

TEST_CASE("stationary AR(1) is strongly rejected", "[adf]") {
    const auto x = synthetic::ar1(500, 0.2, 3);
    const auto res = adf_test(view(x));
    CHECK(res.p_value < 0.01);
    CHECK(res.r4 > 0.99);
    // Statistic agrees with the reference implementation on the same data
    // (identical Schwert lag, constant-only regression).
    CHECK(res.statistic == Catch::Approx(-4.6463284089).margin(1e-6));
    CHECK(res.lags == 17);
}

TEST_CASE("random walk is not rejected", "[adf]") {
    const auto x = synthetic::random_walk(500, 3);
    const auto res = adf_test(view(x));
    CHECK(res.p_value > 0.30);
    CHECK(res.r4 < 0.70);
    CHECK(res.statistic == Catch::Approx(-1.8280942039).margin(1e-6));
    CHECK(res.p_value == Catch::Approx(0.3666055780).margin(1e-6));
    CHECK(res.r4 == Catch::Approx(1.0 - res.p_value).margin(1e-12));
}

TEST_CASE("unit-root evidence orders series correctly", "[adf]") {
    const auto stationary = synthetic::ar1(500, 0.2, 3);
    const auto walk = synthetic::random_walk(500, 3);
    CHECK(adf_test(view(stationary)).p_value < adf_test(view(walk)).p_value);
}

TEST_CASE("adf input validation", "[adf]") {
    const std::vector<double> constant(100, 3.0);
    CHECK_THROWS_AS(adf_test(view(constant)), Error);
    try {
        adf_test(view(constant));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSeries);
    }

    const std::vector<double> tiny(20, 0.0);
    try {
        adf_test(view(tiny));
        FAIL("expected SeriesTooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SeriesTooShort);
    }
}

TEST_CASE("max_lag caps the Schwert rule", "[adf]") {
    const auto x = synthetic::ar1(500, 0.5, 4);
    const auto full = adf_test(view(x));
    const auto capped = adf_test(view(x), 4);
    CHECK(full.lags == 17);
    CHECK(capped.lags == 4);
}
