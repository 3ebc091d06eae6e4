#include <doctest.h>

#include <numbers>

#include "test_helpers.hpp"
#include "varmult/decompose.hpp"
#include "varmult/oracles.hpp"
#include "varmult/squarefun.hpp"
#include "varmult/variation.hpp"

using namespace varmult;
using namespace varmult::testing;

namespace {

EndpointGrid twelve_segments(std::size_t n) {
    // Drops cuts 3, 7, 11, 15 from the full grid of 16.
    std::vector<std::size_t> cuts;
    for (std::size_t b = 0; b <= n; ++b) {
        if (b % 4 != 3) cuts.push_back(b);
    }
    return EndpointGrid(n, cuts);
}

}  // namespace

TEST_CASE("endpoint grids") {
    CHECK(EndpointGrid::full(8).segments() == 8);
    CHECK(EndpointGrid::full(8).is_full());
    CHECK(EndpointGrid::every(8, 2).cuts().size() == 5);
    CHECK(EndpointGrid::default_for(256).is_full());
    CHECK_FALSE(EndpointGrid::default_for(512).is_full());
    CHECK(EndpointGrid::full(8).interval(0, 8) == full_range(8));
    CHECK(EndpointGrid::full(8).interval(4, 5) == FreqInterval{0, 0});
    CHECK(twelve_segments(16).segments() == 12);

    CHECK_THROWS_AS(EndpointGrid(8, {1, 8}), InvalidArgument);
    CHECK_THROWS_AS(EndpointGrid(8, {0, 4}), InvalidArgument);
    CHECK_THROWS_AS(EndpointGrid(8, {0, 4, 4, 8}), InvalidArgument);
    CHECK_THROWS_AS(EndpointGrid(8, {0, 5, 3, 8}), InvalidArgument);
    CHECK_THROWS_AS(EndpointGrid(8, {0, 4, 9}), InvalidArgument);
}

TEST_CASE("square_function examples") {
    auto f = random_gaussian_signal(32, 301, 0);

    SUBCASE("full range gives the modulus") {
        auto field = square_function(f, IntervalCollection({full_range(32)}), 2.0);
        for (std::size_t x = 0; x < 32; ++x) CHECK(std::abs(field.values[x] - std::abs(f[x])) <= 1e-12 * f.sup_norm());
    }
    SUBCASE("single mode") {
        auto g = single_mode(32, 5, std::polar(0.7, 1.1));
        auto hit = square_function(g, IntervalCollection({{-3, 1}, {4, 9}}), 2.5);
        auto miss = square_function(g, IntervalCollection({{-3, 1}, {6, 9}}), 2.5);
        for (std::size_t x = 0; x < 32; ++x) {
            CHECK(hit.values[x] == doctest::Approx(0.7).epsilon(1e-12));
            CHECK(miss.values[x] <= 1e-14);
        }
    }
    SUBCASE("matches per-interval recomputation") {
        IntervalCollection c({{-16, -9}, {-4, 0}, {2, 2}, {7, 15}});
        auto field = square_function(f, c, 2.0);
        REQUIRE(field.collection.has_value());
        for (std::size_t x = 0; x < 32; ++x) {
            double sum = 0.0;
            for (const auto& interval : c.items()) {
                Complex acc{};
                const auto spectrum = dft(f);
                for (auto k = interval.lo; k <= interval.hi; ++k) {
                    acc += spectrum.at(k) * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k * static_cast<std::ptrdiff_t>(x)) / 32.0);
                }
                sum += std::norm(acc / 32.0);
            }
            CHECK(std::abs(field.values[x] - std::sqrt(sum)) <= 1e-12 * f.sup_norm());
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(square_function(f, IntervalCollection({{-40, 0}}), 2.0), InvalidArgument);
        CHECK_THROWS_AS(square_function(f, IntervalCollection({{0, 1}}), 0.5), InvalidArgument);
    }
}

TEST_CASE("var_carleson examples") {
    SUBCASE("single mode") {
        auto g = single_mode(32, -6, std::polar(1.3, -0.4));
        for (double s : {1.5, 2.5, 4.0}) {
            auto field = var_carleson(g, s);
            for (std::size_t x = 0; x < 32; ++x) CHECK(field.values[x] == doctest::Approx(1.3).epsilon(1e-12));
        }
    }
    SUBCASE("zero") {
        auto field = var_carleson(GridFunction::zeros(16), 2.5);
        for (double v : field.values) CHECK(v == 0.0);
    }
    SUBCASE("exponent must exceed one") {
        CHECK_THROWS_AS(var_carleson(GridFunction::zeros(16), 1.0), InvalidArgument);
    }
    SUBCASE("grid size must match") {
        CHECK_THROWS_AS(var_carleson(GridFunction::zeros(16), 2.5, EndpointGrid::full(8)), InvalidArgument);
    }
}

TEST_CASE("var_carleson equals exhaustive enumeration") {
    SUBCASE("full grid, N = 8") {
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            auto f = random_gaussian_signal(8, 302, trial);
            auto grid = EndpointGrid::full(8);
            for (double s : {2.5, 3.0}) {
                auto dp = var_carleson(f, s, grid);
                auto want = oracle::exhaustive_var_carleson(f, s, grid);
                for (std::size_t x = 0; x < 8; ++x) CHECK(std::abs(dp.values[x] - want[x]) <= 1e-12 * want[x]);
            }
        }
    }
    SUBCASE("full grid, N = 16") {
        auto f = random_gaussian_signal(16, 309, 0);
        auto dp = var_carleson(f, 2.5);
        auto want = oracle::exhaustive_var_carleson(f, 2.5, EndpointGrid::full(16));
        for (std::size_t x = 0; x < 16; ++x) CHECK(std::abs(dp.values[x] - want[x]) <= 1e-12 * want[x]);
    }
    SUBCASE("twelve segments, N = 16") {
        for (std::uint64_t trial = 0; trial < 3; ++trial) {
            auto f = random_gaussian_signal(16, 303, trial);
            auto grid = twelve_segments(16);
            auto dp = var_carleson(f, 2.5, grid);
            CHECK_FALSE(dp.full_grid);
            auto want = oracle::exhaustive_var_carleson(f, 2.5, grid);
            for (std::size_t x = 0; x < 16; ++x) CHECK(std::abs(dp.values[x] - want[x]) <= 1e-12 * want[x]);
        }
    }
}

TEST_CASE("var_carleson properties") {
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        auto f = random_gaussian_signal(32, 304, trial);
        auto low = var_carleson(f, 2.2);
        auto high = var_carleson(f, 3.0);
        auto coarse = var_carleson(f, 2.2, EndpointGrid::every(32, 4));
        for (std::size_t x = 0; x < 32; ++x) {
            CHECK(high.values[x] <= low.values[x] * (1 + 1e-12));
            CHECK(coarse.values[x] <= low.values[x] * (1 + 1e-12));
        }

        // Dominance over every single interval.
        for (std::ptrdiff_t a = -16; a <= 15; a += 3) {
            for (std::ptrdiff_t b = a; b <= 15; b += 5) {
                auto ps = partial_sum(f, {a, b});
                for (std::size_t x = 0; x < 32; ++x) CHECK(std::abs(ps[x]) <= low.values[x] * (1 + 1e-12));
            }
        }

        // Witnesses reproduce the values.
        REQUIRE(low.witness.size() == 32);
        for (std::size_t x = 0; x < 32; ++x) {
            auto field = square_function(f, low.witness[x], 2.2);
            CHECK(std::abs(field.values[x] - low.values[x]) <= 1e-10 * std::max(1.0, low.values[x]));
        }
    }
}

TEST_CASE("var_carleson_multi agrees with single-exponent calls") {
    auto f = random_gaussian_signal(64, 305, 0);
    const double exponents[] = {2.2, 2.6, 3.5};
    auto multi = var_carleson_multi(f, exponents, EndpointGrid::full(64), false);
    REQUIRE(multi.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        auto single = var_carleson(f, exponents[i]);
        CHECK(multi[i].witness.empty());
        for (std::size_t x = 0; x < 64; ++x) CHECK(multi[i].values[x] == single.values[x]);
    }
}

TEST_CASE("chain_constant") {
    CHECK(chain_constant(1.0, 2.0, 1.0, 1.0) == doctest::Approx(3.414213562373095).epsilon(1e-12));

    // Against a truncated evaluation of the level series.
    const double r = 1.5, s = 2.5;
    const double sc = s / (s - 1.0);
    double series = 0.0;
    for (int j = 0; j < 4000; ++j) series += std::pow(2.0, j / sc - j / r);
    const double want = kCoefConstant * std::pow(kCountConstant, 1.0 / sc) * series;
    CHECK(chain_constant(r, s, kCountConstant, kCoefConstant) == doctest::Approx(want).epsilon(1e-10));

    double previous = 0.0;
    for (double si : {2.5, 2.9, 2.99}) {
        const double c = chain_constant(1.5, si, 4.0, 2.0);
        CHECK(std::isfinite(c));
        CHECK(c > previous);
        previous = c;
    }
    CHECK_THROWS_AS(chain_constant(1.5, 3.0, 4.0, 2.0), HypothesisViolation);
    CHECK_THROWS_AS(chain_constant(1.5, 3.5, 4.0, 2.0), HypothesisViolation);
    CHECK(chain_constant(ExponentConfig::make(1.5, 2.0, 2.5), 4.0, 2.0) == chain_constant(1.5, 2.5, 4.0, 2.0));
}

TEST_CASE("verify_chain") {
    const auto cfg = ExponentConfig::make(1.5, 2.0, 2.5);
    auto f = random_gaussian_signal(64, 306, 0);

    SUBCASE("constant one") {
        auto report = verify_chain(Multiplier::constant(64, 1.0), f, cfg);
        CHECK(report.pass);
        CHECK(report.violations == 0);
    }
    SUBCASE("normalized interval indicator") {
        auto m = normalize_to_unit_ball(indicator(64, {-10, 12}), 1.5);
        auto report = verify_chain(m, f, cfg);
        CHECK(report.pass);
        CHECK(report.max_ratio * report.constant <= 1.0 + 1e-12);
    }
    SUBCASE("random unit-ball multipliers") {
        CounterRng rng(307, 0);
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            auto m = normalize_to_unit_ball(Multiplier(random_reals(rng, 64)), 1.5);
            auto g = random_gaussian_signal(64, 308, trial);
            CHECK(verify_chain(m, g, cfg).pass);
        }
    }
    SUBCASE("norm precondition") {
        CHECK_THROWS_AS(verify_chain(Multiplier::constant(64, 1.5), f, cfg), InvalidArgument);
    }
}
