// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "varmult/cli.hpp"
#include "varmult/decompose.hpp"
#include "varmult/errors.hpp"
#include "varmult/grid.hpp"
#include "varmult/io.hpp"
#include "varmult/maximal.hpp"
#include "varmult/oracles.hpp"
#include "varmult/rng.hpp"
#include "varmult/squarefun.hpp"
#include "varmult/sweep.hpp"
#include "varmult/variation.hpp"

using namespace varmult;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<double> uniform_values(CounterRng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
    return v;
}

double sup_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double top = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) top = std::max(top, std::abs(a[i] - b[i]));
    return top;
}

double sup_abs(std::span<const Complex> a) {
    double top = 0.0;
    for (const auto& v : a) top = std::max(top, std::abs(v));
    return top;
}

Outcome variation_oracle() {
    const double rs[] = {1.0, 1.3, 1.7, 2.0, 3.0};
    CounterRng rng(1001, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = 1 + static_cast<std::size_t>(rng.next() % 12);
        const auto v = uniform_values(rng, n);
        for (double r : rs) {
            const double want = oracle::exhaustive_variation_power(v, r);
            worst = std::max(worst, std::abs(variation_power(v, r) - want) / std::max(1.0, want));
        }
    }
    return {worst <= 1e-12, "max scaled error " + fmt(worst)};
}

Outcome decomposition_bounds() {
    std::size_t failures = 0, total = 0;
    for (double r : {1.0, 1.5, 1.9}) {
        CounterRng rng(1002, static_cast<std::uint64_t>(r * 10));
        for (int trial = 0; trial < 500; ++trial) {
            const Multiplier m(uniform_values(rng, 64));
            const double rho = vr_norm(m, r);
            const double tol = 1e-6 * rho;
            const auto d = decompose(m, r, tol);
            bool ok = d.residual_sup <= tol && verify_lemma_bounds(d).pass;
            for (std::size_t j = 0; j < d.levels.size(); ++j) {
                const double eps = std::pow(2.0, -static_cast<double>(j) / r) * rho;
                ok = ok && static_cast<double>(d.levels[j].size()) <= 4.0 * std::pow(2.0, static_cast<double>(j));
                for (const auto& piece : d.levels[j]) ok = ok && std::abs(piece.coeff) <= 2.0 * eps;
            }
            const auto partial = partial_reconstructions(d, 64);
            for (std::size_t j = 0; j < partial.size(); ++j) {
                const double eps = std::pow(2.0, -static_cast<double>(j) / r) * rho;
                for (std::size_t i = 0; i < 64; ++i) ok = ok && std::abs(partial[j][i] - m[i]) < eps;
            }
            const auto rebuilt = reconstruct(d, 64);
            for (std::size_t i = 0; i < 64; ++i) {
                ok = ok && std::abs(rebuilt[i] - m[i]) <= tol + 1e-12 * rho;
                ok = ok && std::abs(rebuilt[i] + d.residual[i] - m[i]) <= 1e-12 * rho;
            }
            failures += ok ? 0 : 1;
            ++total;
        }
    }
    return {failures == 0, std::to_string(total - failures) + "/" + std::to_string(total) + " decompositions within bounds"};
}

Outcome pointwise_chain() {
    const auto cfg = ExponentConfig::make(1.5, 2.0, 2.5);
    CounterRng rng(1003, 0);
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        std::vector<double> values = uniform_values(rng, 64);
        if (trial % 2 == 1) {
            // Random walk: fewer, larger oscillations than independent draws.
            for (std::size_t i = 1; i < values.size(); ++i) values[i] = values[i - 1] + 0.2 * values[i];
        }
        const auto m = normalize_to_unit_ball(Multiplier(values), 1.5);
        const auto f = random_gaussian_signal(64, 1003, trial);
        const auto report = verify_chain(m, f, cfg);
        failures += report.pass ? 0 : 1;
        worst = std::max(worst, report.max_ratio);
    }
    return {failures == 0, std::to_string(200 - failures) + "/200 pass, max |Tf|/(C V_s f) " + fmt(worst)};
}

Outcome carleson_oracle() {
    // Thirteen cuts on N = 16: the full grid minus cuts 3, 7, 11, 15.
    std::vector<std::size_t> cuts;
    for (std::size_t b = 0; b <= 16; ++b) {
        if (b % 4 != 3) cuts.push_back(b);
    }
    const EndpointGrid grid(16, cuts);
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const auto f = random_gaussian_signal(16, 1004, trial);
        for (double s : {2.2, 3.0}) {
            const auto dp = var_carleson(f, s, grid);
            const auto want = oracle::exhaustive_var_carleson(f, s, grid);
            for (std::size_t x = 0; x < 16; ++x) worst = std::max(worst, std::abs(dp.values[x] - want[x]) / want[x]);
        }
    }
    return {worst <= 1e-12, std::to_string(grid.segments()) + " segments, max relative error " + fmt(worst)};
}

Outcome transform_oracles() {
    CounterRng rng(1005, 0);
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::size_t{1} << (trial % 7);
        const auto f = random_gaussian_signal(n, 1005, trial);
        const auto spectrum = dft(f);
        const auto slow = oracle::naive_dft(f.values());
        worst = std::max(worst, sup_diff(spectrum.coeffs(), slow) / sup_abs(slow));

        const auto back = inverse_dft(spectrum);
        const auto slow_back = oracle::naive_inverse_dft(spectrum.coeffs());
        worst = std::max(worst, sup_diff(back.values(), slow_back) / sup_abs(slow_back));

        const Multiplier m(uniform_values(rng, n));
        const auto applied = apply_multiplier(f, m);
        const auto slow_applied = oracle::naive_apply(f.values(), m.values());
        const double scale = sup_abs(slow_applied);
        if (scale > 0.0) worst = std::max(worst, sup_diff(applied.values(), slow_applied) / scale);
    }
    return {worst <= 1e-10, "max relative error " + fmt(worst)};
}

Outcome theorem_stability() {
    const std::pair<double, double> pairs[] = {{1.5, 2.0}, {1.2, 1.5}};
    const std::size_t sizes[] = {64, 128, 256, 512};
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [r, p] : pairs) {
        double at64 = 0.0, top = 0.0;
        std::size_t violations = 0;
        bool lower_below = true;
        detail << "r=" << r << " p=" << p << " max upper ratio";
        for (auto n : sizes) {
            const auto summary = empirical_operator_norm(r, p, n, 50, 1);
            if (n == 64) at64 = summary.upper.max;
            top = std::max(top, summary.upper.max);
            violations += summary.sandwich_violations;
            lower_below = lower_below && summary.lower.max <= summary.upper.max;
            detail << " " << fmt(summary.upper.max) << (summary.certified ? "" : "*");
        }
        const bool ok = top <= 2.0 * at64 && violations == 0 && lower_below;
        detail << " (growth " << fmt(top / at64) << ", sandwich violations " << violations << "); ";
        pass = pass && ok;
    }
    return {pass, detail.str()};
}

bool rejects(const std::function<void()>& call) {
    try {
        call();
    } catch (const HypothesisViolation&) {
        return true;
    }
    return false;
}

Outcome hypothesis_gate() {
    const std::pair<double, double> bad[] = {{2.0, 3.0}, {2.5, 4.0}, {1.5, 1.5}, {1.5, 1.2}, {1.0, 1.0}};
    const auto f_json = io::to_json(random_gaussian_signal(16, 1007, 0)).dump();
    const auto path = std::filesystem::temp_directory_path() / "varmult_acceptance_gate.json";
    io::write_text_file(path, f_json);

    std::size_t rejected = 0, total = 0;
    for (const auto& [r, p] : bad) {
        total += 4;
        rejected += rejects([&] { empirical_operator_norm(r, p, 16, 1, 1); }) ? 1 : 0;
        rejects([&] { check_theorem_hypotheses(r, p); }) ? ++rejected : 0;
        rejected += rejects([&] { sweep_config_from_json(io::Json{{"pairs", {{r, p}}}}); }) ? 1 : 0;

        const std::string rs = io::format_double(r), ps = io::format_double(p), file = path.string();
        const char* argv[] = {"varmult", "maximal", "--input", file.c_str(), "--r", rs.c_str(), "--p", ps.c_str()};
        std::ostringstream out, err;
        rejected += run_cli(8, argv, out, err) == kExitHypothesis ? 1 : 0;
    }
    // Admissible pairs must go through.
    bool accepts = !rejects([] { check_theorem_hypotheses(1.5, 2.0); }) &&
                   !rejects([] { check_theorem_hypotheses(1.0, 1.1); });
    std::filesystem::remove(path);
    return {rejected == total && accepts,
            std::to_string(rejected) + "/" + std::to_string(total) + " rejections, admissible pairs " +
                (accepts ? "accepted" : "refused")};
}

Outcome single_mode_exactness() {
    double worst = 0.0;
    std::size_t infeasible = 0, cases = 0;
    for (std::size_t n : {8, 64, 256}) {
        for (double r : {1.0, 1.5, 1.9}) {
            for (std::ptrdiff_t k : {min_freq(n), std::ptrdiff_t{0}, std::ptrdiff_t{3}, max_freq(n)}) {
                const Complex a = std::polar(0.3 + static_cast<double>(cases % 5), 0.7 * static_cast<double>(cases));
                const auto f = single_mode(n, k, a);
                const std::size_t points[] = {0, n / 2, n - 1};
                const auto lb = maximal_lower(f, r, {}, points);
                for (double v : lb.lower) worst = std::max(worst, std::abs(v - std::abs(a)) / std::abs(a));
                for (const auto& [x, m] : lb.witnesses) {
                    const bool feasible = vr_norm(m, r) <= 1.0 + 1e-9 &&
                                          std::abs(std::abs(apply_multiplier(f, m)[x]) - lb.lower[x]) <= 1e-9 * lb.lower[x];
                    infeasible += feasible ? 0 : 1;
                }
                ++cases;
            }
        }
    }
    return {worst <= 1e-12 && infeasible == 0,
            std::to_string(cases) + " cases, max relative deviation " + fmt(worst) + ", infeasible witnesses " +
                std::to_string(infeasible)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "variation DP equals exhaustive enumeration", 60, variation_oracle},
        {2, "decomposition level bounds", 60, decomposition_bounds},
        {3, "pointwise chain bound", 300, pointwise_chain},
        {4, "variational Carleson DP equals exhaustive enumeration", 60, carleson_oracle},
        {5, "transforms match direct summation", 30, transform_oracles},
        {6, "operator-norm ratios stable in N", 900, theorem_stability},
        {7, "hypothesis gate", 5, hypothesis_gate},
        {8, "single-mode exactness", 5, single_mode_exactness},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds <= c.limit_seconds;
        const bool pass = outcome.pass && in_time;
        all = all && pass;
        std::printf("%s [%d] %s: %s; %.1fs of %.0fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    outcome.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : " (over time limit)");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
