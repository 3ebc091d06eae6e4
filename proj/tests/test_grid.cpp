#include <doctest.h>

#include <limits>
#include <numbers>
#include <thread>

#include "test_helpers.hpp"
#include "varmult/grid.hpp"
#include "varmult/oracles.hpp"
#include "varmult/rng.hpp"

using namespace varmult;
using namespace varmult::testing;

TEST_CASE("centered frequency layout") {
    CHECK(min_freq(8) == -4);
    CHECK(max_freq(8) == 3);
    CHECK(freq_offset(8) == 4);
    CHECK(full_range(16) == FreqInterval{-8, 7});
}

TEST_CASE("grid functions reject bad sizes and non-finite values") {
    CHECK_THROWS_AS(GridFunction(std::vector<Complex>(12)), InvalidArgument);
    CHECK_THROWS_AS(GridFunction(std::vector<Complex>{}), InvalidArgument);
    CHECK_THROWS_AS(GridFunction(std::vector<Complex>{{1.0, 0.0}, {NAN, 0.0}}), InvalidArgument);
    CHECK_THROWS_AS(Multiplier(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}), InvalidArgument);
    CHECK_NOTHROW(GridFunction(std::vector<Complex>(16)));
}

TEST_CASE("dft of zero is zero") {
    const auto spectrum = dft(GridFunction::zeros(8));
    for (const auto& c : spectrum.coeffs()) CHECK(c == Complex{});
}

TEST_CASE("dft of a character concentrates on its frequency") {
    auto f = single_mode(8, 3, {1.0, 0.0});
    auto spectrum = dft(f);
    for (std::ptrdiff_t k = -4; k <= 3; ++k) {
        const Complex want = k == 3 ? Complex{8.0, 0.0} : Complex{};
        CHECK(std::abs(spectrum.at(k) - want) <= 1e-12 * 8.0);
    }
}

TEST_CASE("dft and inverse match direct summation") {
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        auto f = random_gaussian_signal(16, 11, trial);
        auto fast = dft(f);
        auto slow = oracle::naive_dft(f.values());
        CHECK(max_diff(fast.coeffs(), slow) <= 1e-12 * max_abs(slow));

        auto coeffs = random_gaussian_signal(16, 12, trial);
        Spectrum spectrum(std::vector<Complex>(coeffs.values().begin(), coeffs.values().end()));
        auto back = inverse_dft(spectrum);
        auto slow_back = oracle::naive_inverse_dft(spectrum.coeffs());
        CHECK(max_diff(back.values(), slow_back) <= 1e-12 * max_abs(slow_back));
    }
}

TEST_CASE("inverse of a DC spike is the constant one") {
    std::vector<Complex> coeffs(8);
    coeffs[static_cast<std::size_t>(freq_offset(8))] = 8.0;
    auto f = inverse_dft(Spectrum(coeffs));
    for (const auto& v : f.values()) CHECK(std::abs(v - Complex{1.0, 0.0}) <= 1e-15);
}

TEST_CASE("round trip reproduces the input") {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto f = random_gaussian_signal(32, 13, trial);
        auto back = inverse_dft(dft(f));
        CHECK(max_diff(back.values(), f.values()) <= 1e-12 * f.sup_norm());
    }
}

TEST_CASE("apply_multiplier") {
    auto f = random_gaussian_signal(64, 14, 0);

    SUBCASE("identity multiplier") {
        auto out = apply_multiplier(f, Multiplier::constant(64, 1.0));
        CHECK(max_diff(out.values(), f.values()) <= 1e-12 * f.sup_norm());
    }
    SUBCASE("one-mode projection") {
        const std::ptrdiff_t k0 = -7;
        auto out = apply_multiplier(f, indicator(64, {k0, k0}));
        const Complex coeff = dft(f).at(k0);
        for (std::size_t x = 0; x < 64; ++x) {
            const Complex want = coeff * std::polar(1.0, 2.0 * std::numbers::pi * k0 * static_cast<double>(x) / 64.0) / 64.0;
            CHECK(std::abs(out[x] - want) <= 1e-12 * std::abs(coeff));
        }
    }
    SUBCASE("matches the naive product") {
        CounterRng rng(15, 0);
        for (int trial = 0; trial < 5; ++trial) {
            Multiplier m(random_reals(rng, 64));
            auto out = apply_multiplier(f, m);
            auto slow = oracle::naive_apply(f.values(), m.values());
            CHECK(max_diff(out.values(), slow) <= 1e-10 * max_abs(slow));
        }
    }
    SUBCASE("size mismatch") {
        CHECK_THROWS_AS(apply_multiplier(f, Multiplier::constant(32, 1.0)), SizeMismatch);
    }
}

TEST_CASE("apply_multiplier is additive in the multiplier") {
    CounterRng rng(16, 0);
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto f = random_gaussian_signal(32, 16, trial);
        auto a = random_reals(rng, 32), b = random_reals(rng, 32);
        std::vector<double> sum(32);
        for (std::size_t i = 0; i < 32; ++i) sum[i] = a[i] + b[i];
        auto lhs = apply_multiplier(f, Multiplier(sum));
        auto fa = apply_multiplier(f, Multiplier(a)), fb = apply_multiplier(f, Multiplier(b));
        for (std::size_t x = 0; x < 32; ++x) CHECK(std::abs(lhs[x] - fa[x] - fb[x]) <= 1e-12 * f.sup_norm());
    }
}

TEST_CASE("partial_sum") {
    auto f = random_gaussian_signal(32, 17, 0);
    SUBCASE("full range returns f") {
        auto out = partial_sum(f, full_range(32));
        CHECK(max_diff(out.values(), f.values()) <= 1e-12 * f.sup_norm());
    }
    SUBCASE("disjoint cover adds up to f") {
        auto lo = partial_sum(f, {-16, 2});
        auto hi = partial_sum(f, {3, 15});
        for (std::size_t x = 0; x < 32; ++x) CHECK(std::abs(lo[x] + hi[x] - f[x]) <= 1e-12 * f.sup_norm());
    }
    SUBCASE("agrees with the indicator multiplier") {
        CounterRng rng(17, 1);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = static_cast<std::ptrdiff_t>(rng.next() % 32) - 16;
            auto b = static_cast<std::ptrdiff_t>(rng.next() % 32) - 16;
            FreqInterval interval{std::min(a, b), std::max(a, b)};
            auto ps = partial_sum(f, interval);
            auto am = apply_multiplier(f, indicator(32, interval));
            CHECK(max_diff(ps.values(), am.values()) == 0.0);
        }
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(partial_sum(f, {-17, 0}), InvalidArgument);
        CHECK_THROWS_AS(partial_sum(f, {0, 16}), InvalidArgument);
        CHECK_THROWS_AS(partial_sum(f, {3, 2}), InvalidArgument);
    }
}

TEST_CASE("lp_norm") {
    SUBCASE("constant signal") {
        GridFunction f(std::vector<Complex>(16, Complex{3.0, -4.0}));
        for (double p : {1.0, 1.5, 2.0, 7.0, std::numeric_limits<double>::infinity()}) CHECK(lp_norm(f, p) == doctest::Approx(5.0).epsilon(1e-14));
    }
    SUBCASE("Parseval with the 1/N inverse convention") {
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
            auto f = random_gaussian_signal(64, 18, trial);
            double energy = 0.0;
            const auto spectrum = dft(f);
            for (const auto& c : spectrum.coeffs()) energy += std::norm(c);
            const double l2 = lp_norm(f, 2.0);
            CHECK(std::abs(l2 * l2 - energy / (64.0 * 64.0)) <= 1e-12 * l2 * l2);
        }
    }
    SUBCASE("direct summation at p = 3") {
        auto f = random_gaussian_signal(16, 19, 0);
        double sum = 0.0;
        for (const auto& v : f.values()) sum += std::pow(std::abs(v), 3.0);
        CHECK(close(lp_norm(f, 3.0), std::cbrt(sum / 16.0), 1e-12));
    }
    SUBCASE("monotone in p under the normalized measure") {
        const double ps[] = {1.0, 1.2, 2.0, 3.5, 10.0, std::numeric_limits<double>::infinity()};
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            auto f = random_gaussian_signal(32, 20, trial);
            for (std::size_t i = 1; i < std::size(ps); ++i) CHECK(lp_norm(f, ps[i - 1]) <= lp_norm(f, ps[i]) * (1 + 1e-12));
        }
    }
    SUBCASE("p below one is rejected") {
        CHECK_THROWS_AS(lp_norm(GridFunction::zeros(4), 0.5), InvalidArgument);
    }
}

TEST_CASE("interval collections") {
    IntervalCollection c({{3, 5}, {-4, -1}, {0, 2}});
    REQUIRE(c.size() == 3);
    CHECK(c.items()[0] == FreqInterval{-4, -1});
    CHECK(c.items()[2] == FreqInterval{3, 5});
    CHECK_THROWS_AS(IntervalCollection({{0, 3}, {3, 4}}), InvalidArgument);
    CHECK_THROWS_AS(IntervalCollection({{2, 1}}), InvalidArgument);
    CHECK_THROWS_AS(c.check_range(8), InvalidArgument);
    CHECK_NOTHROW(c.check_range(16));
}

TEST_CASE("exponent configurations") {
    auto cfg = ExponentConfig::make(1.5, 2.0, 2.5);
    CHECK(cfg.r_conj() == doctest::Approx(3.0));
    CHECK(cfg.s_conj() == doctest::Approx(5.0 / 3.0));
    CHECK(std::isinf(ExponentConfig::conjugate(1.0)));
    CHECK_NOTHROW(ExponentConfig::make(1.0, 1.5, 10.0));
    CHECK_THROWS_AS(ExponentConfig::make(2.0, 3.0, 2.5), HypothesisViolation);
    CHECK_THROWS_AS(ExponentConfig::make(1.5, 1.5, 2.5), HypothesisViolation);
    CHECK_THROWS_AS(ExponentConfig::make(1.5, 2.0, 3.0), HypothesisViolation);
    CHECK_THROWS_AS(ExponentConfig::make(1.5, 2.0, 2.0), HypothesisViolation);
    // s' = 1.6 needs p > 1.6.
    CHECK_THROWS_AS(ExponentConfig::make(1.5, 1.55, 2.6667), HypothesisViolation);
}

TEST_CASE("transforms are safe to call concurrently") {
    auto f = random_gaussian_signal(128, 21, 0);
    const auto reference = dft(f);
    std::vector<std::thread> threads;
    std::vector<int> ok(8, 0);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            bool same = true;
            for (int rep = 0; rep < 20; ++rep) same = same && max_diff(dft(f).coeffs(), reference.coeffs()) == 0.0;
            ok[static_cast<std::size_t>(t)] = same;
        });
    }
    for (auto& th : threads) th.join();
    for (int v : ok) CHECK(v == 1);
}
