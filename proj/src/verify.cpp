#include "varmult/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "varmult/decompose.hpp"
#include "varmult/maximal.hpp"
#include "varmult/oracles.hpp"
#include "varmult/rng.hpp"
#include "varmult/squarefun.hpp"
#include "varmult/variation.hpp"

namespace varmult {

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<double> random_reals(CounterRng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
    return v;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double top = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) top = std::max(top, std::abs(a[i] - b[i]));
    return top;
}

double max_abs(std::span<const Complex> a) {
    double top = 0.0;
    for (const auto& v : a) top = std::max(top, std::abs(v));
    return top;
}

Check grid_round_trip(std::uint64_t seed) {
    Check c;
    for (std::size_t trial = 0; trial < 10; ++trial) {
        auto f = random_gaussian_signal(32, seed, trial);
        auto back = inverse_dft(dft(f));
        c.require(max_diff(back.values(), f.values()) <= 1e-12 * f.sup_norm(), "inverse_dft(dft(f)) != f");
    }
    return c;
}

Check grid_parseval(std::uint64_t seed) {
    Check c;
    for (std::size_t trial = 0; trial < 10; ++trial) {
        auto f = random_gaussian_signal(64, seed, trial);
        const auto spectrum = dft(f);
        double energy = 0.0;
        for (const auto& v : spectrum.coeffs()) energy += std::norm(v);
        const double n = 64.0;
        const double l2 = lp_norm(f, 2.0);
        c.require(std::abs(l2 * l2 - energy / (n * n)) <= 1e-12 * l2 * l2, "Parseval identity off");
    }
    return c;
}

Check grid_additivity(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 7);
    for (std::size_t trial = 0; trial < 10; ++trial) {
        auto f = random_gaussian_signal(32, seed, 100 + trial);
        Multiplier m1(random_reals(rng, 32)), m2(random_reals(rng, 32));
        std::vector<double> sum(32);
        for (std::size_t i = 0; i < 32; ++i) sum[i] = m1[i] + m2[i];
        auto lhs = apply_multiplier(f, Multiplier(sum));
        auto a = apply_multiplier(f, m1), b = apply_multiplier(f, m2);
        double err = 0.0;
        for (std::size_t x = 0; x < 32; ++x) err = std::max(err, std::abs(lhs[x] - a[x] - b[x]));
        c.require(err <= 1e-12 * std::max(1.0, f.sup_norm()), "apply_multiplier not additive in m");
    }
    return c;
}

Check grid_holder(std::uint64_t seed) {
    Check c;
    const double ps[] = {1.0, 1.5, 2.0, 3.0, 7.0, INFINITY};
    for (std::size_t trial = 0; trial < 10; ++trial) {
        auto f = random_gaussian_signal(64, seed, 200 + trial);
        for (std::size_t i = 1; i < std::size(ps); ++i) {
            c.require(lp_norm(f, ps[i - 1]) <= lp_norm(f, ps[i]) * (1.0 + 1e-12), "lp_norm not monotone in p");
        }
    }
    return c;
}

Check grid_transform_oracle(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 11);
    for (std::size_t trial = 0; trial < 10; ++trial) {
        const std::size_t n = std::size_t{1} << (1 + trial % 6);
        auto f = random_gaussian_signal(n, seed, 300 + trial);
        auto fast = dft(f);
        auto slow = oracle::naive_dft(f.values());
        c.require(max_diff(fast.coeffs(), slow) <= 1e-10 * max_abs(slow), "dft disagrees with direct summation");
        Multiplier m(random_reals(rng, n));
        auto applied = apply_multiplier(f, m);
        auto naive = oracle::naive_apply(f.values(), m.values());
        c.require(max_diff(applied.values(), naive) <= 1e-10 * std::max(1e-300, max_abs(naive)),
                  "apply_multiplier disagrees with direct summation");
    }
    return c;
}

Check variation_oracle(std::uint64_t seed, const VariationPowerFn& impl) {
    Check c;
    CounterRng rng(seed, 21);
    const double rs[] = {1.0, 1.3, 1.7, 2.0, 3.0};
    for (std::size_t trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 12;
        auto v = random_reals(rng, n);
        for (double r : rs) {
            const double got = impl(v, r);
            const double want = oracle::exhaustive_variation_power(v, r);
            c.require(std::abs(got - want) <= 1e-12 * std::max(1.0, want),
                      "DP " + fmt(got) + " vs exhaustive " + fmt(want) + " (n=" + std::to_string(n) + ")");
        }
    }
    return c;
}

Check variation_monotone(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 22);
    const double rs[] = {1.0, 1.3, 1.7, 2.0, 3.0};
    for (std::size_t trial = 0; trial < 20; ++trial) {
        auto v = random_reals(rng, 32);
        for (std::size_t i = 1; i < std::size(rs); ++i) {
            const double lo = std::pow(variation_power(v, rs[i]), 1.0 / rs[i]);
            const double hi = std::pow(variation_power(v, rs[i - 1]), 1.0 / rs[i - 1]);
            c.require(lo <= hi * (1.0 + 1e-12), "r-variation not decreasing in r");
        }
    }
    return c;
}

Check variation_homogeneity(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 23);
    for (std::size_t trial = 0; trial < 20; ++trial) {
        Multiplier m(random_reals(rng, 32));
        const double lambda = -3.0 + 6.0 * rng.uniform();
        const double a = vr_norm(m.scaled(lambda), 1.5);
        const double b = std::abs(lambda) * vr_norm(m, 1.5);
        c.require(std::abs(a - b) <= 1e-12 * std::max(1.0, b), "vr_norm not absolutely homogeneous");
    }
    return c;
}

Check variation_refinement(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 24);
    for (std::size_t trial = 0; trial < 20; ++trial) {
        auto v = random_reals(rng, 64);
        double tv = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
        c.require(std::abs(variation_power(v, 1.0) - tv) <= 1e-12 * tv, "1-variation differs from total variation");
    }
    return c;
}

Check variation_restriction(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 25);
    for (std::size_t trial = 0; trial < 20; ++trial) {
        auto v = random_reals(rng, 32);
        std::vector<double> sub;
        for (double x : v) {
            if (rng.uniform() < 0.5) sub.push_back(x);
        }
        for (double r : {1.0, 1.5, 2.5}) {
            c.require(variation_power(sub, r) <= variation_power(v, r) * (1.0 + 1e-12),
                      "restriction increased the variation");
        }
    }
    return c;
}

Check decompose_properties(std::uint64_t seed, bool& disjoint_ok, bool& level_ok, bool& bounds_ok) {
    Check c;
    CounterRng rng(seed, 31);
    disjoint_ok = level_ok = bounds_ok = true;
    for (std::size_t trial = 0; trial < 30; ++trial) {
        const double r = std::array{1.0, 1.5, 1.9}[trial % 3];
        Multiplier m(random_reals(rng, 64));
        const double rho = vr_norm(m, r);
        const double tol = 1e-3 * rho;
        auto d = decompose(m, r, tol);
        auto total = reconstruct(d, 64);
        double err = 0.0, residual_err = 0.0;
        for (std::size_t i = 0; i < 64; ++i) {
            err = std::max(err, std::abs(total[i] + d.residual[i] - m[i]));
            residual_err = std::max(residual_err, std::abs(total[i] - m[i]));
        }
        c.require(err <= 1e-12 * rho && residual_err <= tol, "reconstruction identity violated");

        auto report = verify_lemma_bounds(d);
        disjoint_ok = disjoint_ok && report.disjoint;
        bounds_ok = bounds_ok && report.pass;
        auto partial = partial_reconstructions(d, 64);
        for (std::size_t j = 0; j < partial.size(); ++j) {
            double e = 0.0;
            for (std::size_t i = 0; i < 64; ++i) e = std::max(e, std::abs(partial[j][i] - m[i]));
            level_ok = level_ok && e < rho * std::exp2(-static_cast<double>(j) / r);
        }
    }
    return c;
}

Check decompose_scaling(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 32);
    for (std::size_t trial = 0; trial < 10; ++trial) {
        Multiplier m(random_reals(rng, 64));
        const double lambda = 0.5 + 3.0 * rng.uniform();
        auto a = decompose(m, 1.5, 1e-4 * vr_norm(m, 1.5));
        auto b = decompose(m.scaled(lambda), 1.5, 1e-4 * vr_norm(m.scaled(lambda), 1.5));
        bool same = a.levels.size() == b.levels.size();
        for (std::size_t j = 0; same && j < a.levels.size(); ++j) {
            same = a.levels[j].size() == b.levels[j].size();
            for (std::size_t q = 0; same && q < a.levels[j].size(); ++q) {
                same = a.levels[j][q].interval == b.levels[j][q].interval &&
                       std::abs(b.levels[j][q].coeff - lambda * a.levels[j][q].coeff) <=
                           1e-12 * lambda * a.rho;
            }
        }
        c.require(same, "decomposition not equivariant under positive scaling");
    }
    return c;
}

Check squarefun_properties(std::uint64_t seed, bool& dominance, bool& monotone, bool& witness, bool& coarsening) {
    Check c;
    dominance = monotone = witness = coarsening = true;
    for (std::size_t trial = 0; trial < 4; ++trial) {
        auto f = random_gaussian_signal(32, seed, 400 + trial);
        auto grid = EndpointGrid::full(32);
        const double ss[] = {2.0, 2.5, 3.5};
        auto fields = var_carleson_multi(f, ss, grid, true);
        for (std::size_t e = 1; e < 3; ++e) {
            for (std::size_t x = 0; x < 32; ++x) {
                monotone = monotone && fields[e].values[x] <= fields[e - 1].values[x] * (1.0 + 1e-12);
            }
        }
        for (std::ptrdiff_t lo = -16; lo < 16; lo += 3) {
            for (std::ptrdiff_t hi = lo; hi < 16; hi += 5) {
                auto piece = partial_sum(f, {lo, hi});
                for (std::size_t x = 0; x < 32; ++x) {
                    dominance = dominance && std::abs(piece[x]) <= fields[1].values[x] * (1.0 + 1e-12);
                }
            }
        }
        for (std::size_t x = 0; x < 32; x += 5) {
            auto replay = square_function(f, fields[1].witness[x], 2.5);
            witness = witness && std::abs(replay.values[x] - fields[1].values[x]) <= 1e-10 * std::max(1.0, fields[1].values[x]);
        }
        const double s_one[] = {2.5};
        auto coarse = var_carleson_multi(f, s_one, EndpointGrid::every(32, 4), false);
        for (std::size_t x = 0; x < 32; ++x) {
            coarsening = coarsening && coarse[0].values[x] <= fields[1].values[x] * (1.0 + 1e-12);
        }
    }
    return c;
}

Check squarefun_oracle(std::uint64_t seed) {
    Check c;
    for (std::size_t trial = 0; trial < 3; ++trial) {
        auto f = random_gaussian_signal(16, seed, 500 + trial);
        EndpointGrid grid(16, {0, 1, 3, 4, 6, 8, 9, 11, 12, 14, 16});
        for (double s : {2.2, 3.0}) {
            auto dp = var_carleson(f, s, grid);
            auto brute = oracle::exhaustive_var_carleson(f, s, grid);
            for (std::size_t x = 0; x < 16; ++x) {
                c.require(std::abs(dp.values[x] - brute[x]) <= 1e-12 * std::max(1.0, brute[x]),
                          "DP supremum differs from exhaustive enumeration");
            }
        }
    }
    return c;
}

Check chain_property(std::uint64_t seed) {
    Check c;
    CounterRng rng(seed, 41);
    const auto cfg = ExponentConfig::make(1.5, 2.0, 2.5);
    for (std::size_t trial = 0; trial < 5; ++trial) {
        auto f = random_gaussian_signal(32, seed, 600 + trial);
        auto m = normalize_to_unit_ball(Multiplier(random_reals(rng, 32)), 1.5);
        c.require(verify_chain(m, f, cfg).pass, "pointwise chain violated");
    }
    return c;
}

Check maximal_properties(std::uint64_t seed, bool& witness_ok, bool& single_ok, bool& budget_ok, bool& scale_ok) {
    Check c;
    witness_ok = single_ok = budget_ok = scale_ok = true;
    const double r = 1.5;
    const auto s_grid = default_s_grid(r);
    for (std::size_t trial = 0; trial < 3; ++trial) {
        auto f = random_gaussian_signal(32, seed, 700 + trial);
        const std::size_t points[] = {0, 7, 19};
        auto upper = maximal_upper(f, r, s_grid);
        auto lower = maximal_lower(f, r, {4, 0, 0.2}, points);
        for (std::size_t x = 0; x < 32; ++x) {
            c.require(lower.lower[x] <= upper.upper[x] + 1e-9 * f.sup_norm(), "lower bound exceeds upper bound");
        }
        for (const auto& [x, m] : lower.witnesses) {
            const double value = std::abs(apply_multiplier(f, m)[x]);
            witness_ok = witness_ok && vr_norm(m, r) <= 1.0 + 1e-9 &&
                         std::abs(value - lower.lower[x]) <= 1e-9 * std::max(1e-300, lower.lower[x]);
        }
        auto more = maximal_lower(f, r, {8, 0, 0.2});
        for (std::size_t x = 0; x < 32; ++x) budget_ok = budget_ok && more.lower[x] >= lower.lower[x];

        std::vector<Complex> scaled(f.values().begin(), f.values().end());
        for (auto& v : scaled) v *= 2.5;
        GridFunction g(std::move(scaled));
        auto upper_g = maximal_upper(g, r, s_grid);
        auto lower_g = maximal_lower(g, r, {4, 0, 0.2});
        for (std::size_t x = 0; x < 32; ++x) {
            scale_ok = scale_ok && std::abs(upper_g.upper[x] - 2.5 * upper.upper[x]) <= 1e-9 * upper_g.upper[x] &&
                       std::abs(lower_g.lower[x] - 2.5 * lower.lower[x]) <= 1e-9 * lower_g.lower[x];
        }
    }
    const Complex amplitude = std::polar(1.7, 0.3);
    auto mode = single_mode(32, 5, amplitude);
    auto lower = maximal_lower(mode, r);
    auto upper = maximal_upper(mode, r, s_grid);
    const double c0 = *std::min_element(upper.constants.begin(), upper.constants.end());
    for (std::size_t x = 0; x < 32; ++x) {
        single_ok = single_ok && std::abs(lower.lower[x] - 1.7) <= 1e-12 * 1.7 &&
                    std::abs(upper.upper[x] / c0 - 1.7) <= 1e-9 * 1.7;
    }
    return c;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    VerifyReport report;
    const auto seed = options.seed;
    const VariationPowerFn impl =
        options.variation ? options.variation
                          : VariationPowerFn([](std::span<const double> v, double r) { return variation_power(v, r); });

    auto add = [&](const std::string& name, const Check& check) {
        report.results.push_back({name, check.ok, check.detail});
        if (!check.ok && !report.first_failure) report.first_failure = name;
        report.pass = report.pass && check.ok;
    };
    auto flag = [](bool ok, const char* what) {
        Check c;
        c.require(ok, what);
        return c;
    };

    add("grid.round_trip", grid_round_trip(seed));
    add("grid.parseval", grid_parseval(seed));
    add("grid.multiplier_additivity", grid_additivity(seed));
    add("grid.holder_monotonicity", grid_holder(seed));
    add("grid.transform_oracle", grid_transform_oracle(seed));

    add("variation.oracle", variation_oracle(seed, impl));
    add("variation.monotone_in_r", variation_monotone(seed));
    add("variation.homogeneity", variation_homogeneity(seed));
    add("variation.refinement_r1", variation_refinement(seed));
    add("variation.restriction", variation_restriction(seed));

    bool disjoint = true, level = true, bounds = true;
    add("decompose.reconstruction", decompose_properties(seed, disjoint, level, bounds));
    add("decompose.disjoint_levels", flag(disjoint, "overlapping intervals within a level"));
    add("decompose.level_sup_bound", flag(level, "partial sum error not below 2^(-j/r) rho"));
    add("decompose.lemma_bounds", flag(bounds, "count or coefficient bound exceeded"));
    add("decompose.scaling", decompose_scaling(seed));

    bool dominance = true, monotone = true, witness = true, coarsening = true;
    auto sq = squarefun_properties(seed, dominance, monotone, witness, coarsening);
    add("squarefun.dominance", flag(dominance && sq.ok, "single interval exceeds the supremum"));
    add("squarefun.monotone_in_s", flag(monotone, "supremum increased with s"));
    add("squarefun.witness", flag(witness, "witness collection does not reproduce the value"));
    add("squarefun.coarsening", flag(coarsening, "coarser endpoint grid gave a larger value"));
    add("squarefun.oracle", squarefun_oracle(seed));
    add("squarefun.chain", chain_property(seed));

    bool witness_ok = true, single_ok = true, budget_ok = true, scale_ok = true;
    add("maximal.sandwich", maximal_properties(seed, witness_ok, single_ok, budget_ok, scale_ok));
    add("maximal.witness_feasible", flag(witness_ok, "witness infeasible or not reproducing lower bound"));
    add("maximal.single_mode", flag(single_ok, "single-mode input not exact"));
    add("maximal.budget_monotone", flag(budget_ok, "larger budget decreased a lower bound"));
    add("maximal.scale_equivariance", flag(scale_ok, "bounds not linear under positive scaling"));
    return report;
}

}  // namespace varmult
