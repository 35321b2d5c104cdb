#include <span>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "rb/changepoint.hpp"
#include "rb/synthetic.hpp"

using namespace rb;

namespace {
std::span<const double> view(const std::vector<double>& v) { return {v}; }
} // namespace

TEST_CASE("constant series has no breaks", "[changepoint]") {
    const std::vector<double> x(50, 7.0);
    const auto res = structural_breaks(view(x));
    CHECK(res.indices.empty());
}

TEST_CASE("unambiguous step yields exactly one break", "[changepoint]") {
    // 100 points at 0 then 100 points at 10, noise std 0.1.
    const auto x = synthetic::step(200, 0.0, 10.0, 0.1, 5);
    const auto res = structural_breaks(view(x));
    REQUIRE(res.indices.size() == 1);
    CHECK(res.indices[0] >= 95);
    CHECK(res.indices[0] <= 105);
    const double density = static_cast<double>(res.indices.size()) / 200.0;
    CHECK(density == Catch::Approx(0.005));
}

TEST_CASE("white noise rarely triggers false positives", "[changepoint]") {
    int clean = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto x = synthetic::white_noise(500, 1000 + seed);
        if (structural_breaks(view(x)).indices.empty()) ++clean;
    }
    CHECK(clean >= 95);
}

TEST_CASE("break indices are sorted and respect the minimum segment", "[changepoint]") {
    // Three well-separated levels.
    std::vector<double> x;
    Rng rng(17);
    for (int t = 0; t < 80; ++t) x.push_back(0.0 + 0.2 * rng.gaussian());
    for (int t = 0; t < 80; ++t) x.push_back(6.0 + 0.2 * rng.gaussian());
    for (int t = 0; t < 80; ++t) x.push_back(-4.0 + 0.2 * rng.gaussian());
    const auto res = structural_breaks(view(x));
    REQUIRE(res.indices.size() == 2);
    CHECK(res.indices[0] < res.indices[1]);
    CHECK(res.indices[0] >= 5);
    CHECK(res.indices[1] <= x.size() - 5);
    CHECK(res.indices[0] >= 75);
    CHECK(res.indices[0] <= 85);
    CHECK(res.indices[1] >= 155);
    CHECK(res.indices[1] <= 165);
}

TEST_CASE("explicit penalty overrides the default", "[changepoint]") {
    const auto x = synthetic::step(200, 0.0, 10.0, 0.1, 5);
    // A penalty larger than any achievable gain suppresses all breaks.
    const auto res = structural_breaks(view(x), 1e9);
    CHECK(res.indices.empty());
    CHECK(res.penalty == 1e9);
}

TEST_CASE("short series is rejected", "[changepoint]") {
    const std::vector<double> x(9, 1.0);
    try {
        structural_breaks(view(x));
        FAIL("expected SeriesTooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SeriesTooShort);
    }
}
