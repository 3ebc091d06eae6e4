#include "varmult/maximal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "varmult/decompose.hpp"
#include "varmult/rng.hpp"
#include "varmult/variation.hpp"

namespace varmult {

namespace {

// Total jump size, in units of 1, allowed in the phase-aligned step search.
constexpr std::size_t kMaxUnits = 16;
constexpr std::array<double, 3> kLevels = {-1.0, 0.0, 1.0};
constexpr std::size_t kPhaseRounds = 3;

Complex evaluate(std::span<const double> m, std::span<const Complex> c) {
    Complex acc{};
    for (std::size_t i = 0; i < m.size(); ++i) acc += m[i] * c[i];
    return acc;
}

struct Candidate {
    double value = 0.0;
    std::vector<double> m;
    CandidateFamily family = CandidateFamily::None;
};

void offer(Candidate& best, double value, std::vector<double> m, CandidateFamily family) {
    if (value > best.value) {
        best.value = value;
        best.m = std::move(m);
        best.family = family;
    }
}

void scale_to_unit_ball(std::vector<double>& m, double r) {
    const double norm = vr_norm(m, r);
    for (double& v : m) v /= norm;
}

// For each total jump size u <= kMaxUnits, the {-1,0,1}-valued step function whose
// level changes add up to at most u and which maximizes sum m_i g_i.
class StepSearch {
public:
    explicit StepSearch(std::size_t n) : n_(n), from_(n * (kMaxUnits + 1) * 3) {}

    std::vector<std::vector<double>> run(std::span<const double> g) {
        constexpr double kNeg = -std::numeric_limits<double>::infinity();
        std::array<std::array<double, 3>, kMaxUnits + 1> dp{}, next{};
        for (auto& row : dp) row.fill(kNeg);
        for (std::size_t l = 0; l < 3; ++l) {
            dp[0][l] = kLevels[l] * g[0];
            from(0, 0, l) = static_cast<std::uint8_t>(l);
        }
        for (std::size_t i = 1; i < n_; ++i) {
            for (std::size_t u = 0; u <= kMaxUnits; ++u) {
                for (std::size_t l = 0; l < 3; ++l) {
                    double top = dp[u][l];
                    auto arg = static_cast<std::uint8_t>(l);
                    for (std::size_t q = 0; q < 3; ++q) {
                        const std::size_t cost = q > l ? q - l : l - q;
                        if (q == l || cost > u) continue;
                        if (dp[u - cost][q] > top) {
                            top = dp[u - cost][q];
                            arg = static_cast<std::uint8_t>(q);
                        }
                    }
                    next[u][l] = top + kLevels[l] * g[i];
                    from(i, u, l) = arg;
                }
            }
            dp = next;
        }

        std::vector<std::vector<double>> out;
        for (std::size_t budget = 1; budget <= kMaxUnits; ++budget) {
            double top = kNeg;
            std::size_t bu = 0, bl = 1;
            for (std::size_t u = 0; u <= budget; ++u) {
                for (std::size_t l = 0; l < 3; ++l) {
                    if (dp[u][l] > top) {
                        top = dp[u][l];
                        bu = u;
                        bl = l;
                    }
                }
            }
            std::vector<double> m(n_);
            for (std::size_t i = n_; i-- > 0;) {
                m[i] = kLevels[bl];
                const std::size_t prev = from(i, bu, bl);
                bu -= prev > bl ? prev - bl : bl - prev;
                bl = prev;
            }
            out.push_back(std::move(m));
        }
        return out;
    }

private:
    std::uint8_t& from(std::size_t i, std::size_t u, std::size_t l) { return from_[(i * (kMaxUnits + 1) + u) * 3 + l]; }

    std::size_t n_;
    std::vector<std::uint8_t> from_;
};

// V^r norms of interval indicators, indexed by their number of unit jumps.
std::array<double, 3> indicator_norms(double r) {
    return {1.0, 2.0, 1.0 + std::pow(2.0, 1.0 / r)};
}

std::size_t jump_count(std::size_t a, std::size_t b, std::size_t n) {
    return static_cast<std::size_t>(a > 0) + static_cast<std::size_t>(b < n);
}

// sum_k |c_k| bounds |sum_k m(k) c_k| for every m with sup |m| <= 1, hence for the whole unit ball.
double ceiling(std::span<const Complex> c) {
    double total = 0.0;
    for (const auto& v : c) total += std::abs(v);
    return total;
}

bool at_ceiling(double value, double top) { return value >= top * (1.0 - 1e-12); }

Candidate structured_candidates(std::span<const Complex> c, std::span<const std::size_t> cuts, double r,
                                StepSearch& steps) {
    const std::size_t n = c.size();
    const double top = ceiling(c);
    Candidate best;

    // (a) m = 1.
    const Complex whole = evaluate(std::vector<double>(n, 1.0), c);
    offer(best, std::abs(whole), std::vector<double>(n, 1.0), CandidateFamily::Constant);

    // (b) single intervals on the endpoint grid, normalized exactly.
    const std::size_t k = cuts.size();
    std::vector<Complex> prefix(k);
    {
        Complex run{};
        std::size_t next_cut = 1;
        for (std::size_t i = 0; i < n; ++i) {
            run += c[i];
            if (i + 1 == cuts[next_cut]) prefix[next_cut++] = run;
        }
    }
    const auto norms = indicator_norms(r);
    const std::array<double, 3> inv_sq = {1.0 / (norms[0] * norms[0]), 1.0 / (norms[1] * norms[1]),
                                          1.0 / (norms[2] * norms[2])};
    double interval_best = -1.0;
    std::size_t ia = 0, ib = k - 1;
    Complex interval_out = whole;
    for (std::size_t t = 1; t < k; ++t) {
        for (std::size_t u = 0; u < t; ++u) {
            const Complex d = prefix[t] - prefix[u];
            const double v = std::norm(d) * inv_sq[jump_count(cuts[u], cuts[t], n)];
            if (v > interval_best) {
                interval_best = v;
                ia = u;
                ib = t;
                interval_out = d;
            }
        }
    }
    {
        std::vector<double> m(n, 0.0);
        const double h = 1.0 / norms[jump_count(cuts[ia], cuts[ib], n)];
        for (std::size_t i = cuts[ia]; i < cuts[ib]; ++i) m[i] = h;
        offer(best, std::abs(evaluate(m, c)), std::move(m), CandidateFamily::Interval);
    }
    if (at_ceiling(best.value, top)) return best;

    // (c) phase-aligned step functions.
    std::size_t loudest = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::norm(c[i]) > std::norm(c[loudest])) loudest = i;
    }
    const std::array<double, 7> phases = {std::arg(whole),       std::arg(interval_out), std::arg(c[loudest]), 0.0,
                                          std::numbers::pi / 4, std::numbers::pi / 2,   3 * std::numbers::pi / 4};
    std::vector<double> g(n);
    for (double theta : phases) {
        // Alternate: best step function for the current phase, then the phase of its output.
        for (std::size_t round = 0; round < kPhaseRounds; ++round) {
            const Complex rot = std::polar(1.0, -theta);
            for (std::size_t i = 0; i < n; ++i) g[i] = (rot * c[i]).real();
            double round_best = 0.0;
            Complex round_out{};
            for (auto& m : steps.run(g)) {
                if (std::all_of(m.begin(), m.end(), [](double v) { return v == 0.0; })) continue;
                scale_to_unit_ball(m, r);
                const Complex out = evaluate(m, c);
                if (std::abs(out) > round_best) {
                    round_best = std::abs(out);
                    round_out = out;
                }
                offer(best, std::abs(out), std::move(m), CandidateFamily::Step);
            }
            if (round_best == 0.0 || std::abs(std::arg(round_out) - theta) < 1e-12) break;
            theta = std::arg(round_out);
        }
    }
    return best;
}

// Subgradient ascent on |<m, c>| / vr_norm(m), retracted to the unit sphere after each step.
void ascend(Candidate& best, std::span<const Complex> c, double r, const LowerBudget& budget) {
    const std::size_t n = c.size();
    std::vector<double> m = best.m;
    std::vector<double> g(n), dir(n);
    for (std::size_t step = 0; step < budget.ascent_steps; ++step) {
        const Complex out = evaluate(m, c);
        const double value = std::abs(out);
        const Complex rot = value > 0.0 ? std::conj(out) / value : Complex{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) g[i] = (rot * c[i]).real();

        const auto sub = vr_norm_subgradient(m, r);
        double dir_sup = 0.0, m_sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = (g[i] * sub.norm - value * sub.gradient[i]) / (sub.norm * sub.norm);
            dir_sup = std::max(dir_sup, std::abs(dir[i]));
            m_sup = std::max(m_sup, std::abs(m[i]));
        }
        if (dir_sup == 0.0 || m_sup == 0.0) break;

        const double eta = budget.initial_step * m_sup / dir_sup / std::sqrt(static_cast<double>(step) + 1.0);
        for (std::size_t i = 0; i < n; ++i) m[i] += eta * dir[i];
        const double norm = vr_norm(m, r);
        if (norm == 0.0) break;
        for (double& v : m) v /= norm;
        offer(best, std::abs(evaluate(m, c)), m, CandidateFamily::Ascent);
    }
}

void check_s_grid(double r, std::span<const double> s_grid) {
    if (s_grid.empty()) throw InvalidArgument("s grid is empty");
    const double r_conj = ExponentConfig::conjugate(r);
    for (double s : s_grid) {
        if (!(s > 2.0) || !(s < r_conj)) {
            throw HypothesisViolation("s = " + std::to_string(s) + " outside (2, r') with r' = " + std::to_string(r_conj));
        }
    }
}

std::vector<double> spaced_grid(double lo, double hi) {
    const double gap = hi - lo;
    std::vector<double> out(7);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = lo + 0.05 * gap + 0.9 * gap * static_cast<double>(i) / 6.0;
    }
    return out;
}

RatioStats summarize(std::vector<double> values) {
    RatioStats stats;
    if (values.empty()) return stats;
    std::sort(values.begin(), values.end());
    auto rank = [&](double q) {
        auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
        return values[std::clamp<std::size_t>(idx, 1, values.size()) - 1];
    };
    stats.max = values.back();
    stats.q50 = rank(0.5);
    stats.q90 = rank(0.9);
    return stats;
}

std::size_t count_sandwich_violations(const std::vector<double>& lower, const std::vector<double>& upper, double f_sup) {
    std::size_t count = 0;
    for (std::size_t x = 0; x < lower.size(); ++x) {
        if (lower[x] > upper[x] + 1e-9 * f_sup) ++count;
    }
    return count;
}

}  // namespace

std::string_view family_name(CandidateFamily family) {
    switch (family) {
        case CandidateFamily::Constant: return "constant";
        case CandidateFamily::Interval: return "interval";
        case CandidateFamily::Step: return "step";
        case CandidateFamily::Ascent: return "ascent";
        case CandidateFamily::None: break;
    }
    return "none";
}

std::vector<double> default_s_grid(double r) {
    if (!(r >= 1.0 && r < 2.0)) throw HypothesisViolation("default_s_grid: r must lie in [1, 2)");
    return spaced_grid(2.0, std::min(ExponentConfig::conjugate(r), kSGridCap));
}

std::vector<double> default_s_grid(double r, double p) {
    check_theorem_hypotheses(r, p);
    const double hi = std::min(ExponentConfig::conjugate(r), kSGridCap);
    const double lo = std::max(2.0, ExponentConfig::conjugate(p));
    if (!(lo < hi)) throw HypothesisViolation("default_s_grid: no admissible s for these exponents");
    return spaced_grid(lo, hi);
}

UpperBound maximal_upper(const GridFunction& f, double r, std::span<const double> s_grid,
                         const std::optional<EndpointGrid>& grid) {
    if (!(r >= 1.0 && r < 2.0)) throw HypothesisViolation("maximal_upper: r must lie in [1, 2)");
    check_s_grid(r, s_grid);
    const EndpointGrid cuts = grid ? *grid : EndpointGrid::default_for(f.size());

    UpperBound out;
    out.s_grid.assign(s_grid.begin(), s_grid.end());
    out.certified = cuts.is_full();
    for (double s : s_grid) out.constants.push_back(chain_constant(r, s, kCountConstant, kCoefConstant));

    const auto fields = var_carleson_multi(f, s_grid, cuts, false);
    const std::size_t n = f.size();
    out.upper.assign(n, std::numeric_limits<double>::infinity());
    out.s_used.assign(n, s_grid.front());
    for (std::size_t e = 0; e < fields.size(); ++e) {
        for (std::size_t x = 0; x < n; ++x) {
            const double v = out.constants[e] * fields[e].values[x];
            if (v < out.upper[x]) {
                out.upper[x] = v;
                out.s_used[x] = s_grid[e];
            }
        }
    }
    return out;
}

LowerBound maximal_lower(const GridFunction& f, double r, const LowerBudget& budget,
                         std::span<const std::size_t> witness_points, const std::optional<EndpointGrid>& grid) {
    if (!(r >= 1.0)) throw InvalidArgument("maximal_lower: r must be >= 1");
    if (witness_points.size() > kMaxWitnessPoints) {
        throw InvalidArgument("at most " + std::to_string(kMaxWitnessPoints) + " witness points");
    }
    const std::size_t n = f.size();
    for (auto x : witness_points) {
        if (x >= n) throw InvalidArgument("witness point " + std::to_string(x) + " out of range");
    }
    const EndpointGrid cuts = grid ? *grid : EndpointGrid::default_for(n);
    if (cuts.size() != n) throw SizeMismatch(n, cuts.size());
    const PointContributions contributions(dft(f));

    std::vector<Candidate> best(n);
#pragma omp parallel
    {
        std::vector<Complex> c;
        StepSearch steps(n);
#pragma omp for schedule(dynamic, 4)
        for (std::size_t x = 0; x < n; ++x) {
            contributions.fill(x, c);
            best[x] = structured_candidates(c, cuts.cuts(), r, steps);
        }
    }

    std::vector<std::size_t> chosen(n);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    if (budget.ascent_points > 0 && budget.ascent_points < n) {
        std::stable_sort(chosen.begin(), chosen.end(),
                         [&](std::size_t a, std::size_t b) { return best[a].value > best[b].value; });
        chosen.resize(budget.ascent_points);
    }
    if (budget.ascent_steps > 0) {
#pragma omp parallel
        {
            std::vector<Complex> c;
#pragma omp for schedule(dynamic, 1)
            for (std::size_t i = 0; i < chosen.size(); ++i) {
                const std::size_t x = chosen[i];
                if (best[x].value == 0.0) continue;
                contributions.fill(x, c);
                if (at_ceiling(best[x].value, ceiling(c))) continue;
                ascend(best[x], c, r, budget);
            }
        }
    }

    LowerBound out;
    out.lower.resize(n);
    out.family.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        out.lower[x] = best[x].value;
        out.family[x] = best[x].value > 0.0 ? best[x].family : CandidateFamily::None;
    }
    for (auto x : witness_points) {
        auto m = best[x].m.empty() ? std::vector<double>(n, 1.0) : best[x].m;
        out.witnesses.emplace(x, Multiplier(std::move(m)));
    }
    return out;
}

BoundReport bound_report(const GridFunction& f, double r, std::span<const double> p_list,
                         std::span<const double> s_grid, const LowerBudget& budget,
                         std::span<const std::size_t> witness_points, const std::optional<EndpointGrid>& grid) {
    for (double p : p_list) check_theorem_hypotheses(r, p);
    auto upper = maximal_upper(f, r, s_grid, grid);
    auto lower = maximal_lower(f, r, budget, witness_points, grid);

    BoundReport report;
    report.size = f.size();
    report.r = r;
    report.lower = std::move(lower.lower);
    report.family = std::move(lower.family);
    report.witnesses = std::move(lower.witnesses);
    report.upper = std::move(upper.upper);
    report.s_used = std::move(upper.s_used);
    report.s_grid = std::move(upper.s_grid);
    report.constants = std::move(upper.constants);
    report.certified = upper.certified;
    report.sandwich_violations = count_sandwich_violations(report.lower, report.upper, f.sup_norm());
    for (double p : p_list) {
        LpSummary s;
        s.lower_norm = lp_norm(report.lower, p);
        s.upper_norm = lp_norm(report.upper, p);
        s.f_norm = lp_norm(f, p);
        s.lower_ratio = s.f_norm > 0.0 ? s.lower_norm / s.f_norm : 0.0;
        s.upper_ratio = s.f_norm > 0.0 ? s.upper_norm / s.f_norm : 0.0;
        report.lp_summary.emplace(p, s);
    }
    return report;
}

std::uint64_t trial_stream(std::size_t n, std::size_t trial) {
    return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(trial);
}

OperatorNormSummary empirical_operator_norm(double r, double p, std::size_t n, std::size_t trials, std::uint64_t seed,
                                            const EmpiricalOptions& options) {
    check_theorem_hypotheses(r, p);
    const auto s_grid = options.s_grid.empty() ? default_s_grid(r, p) : options.s_grid;

    OperatorNormSummary summary;
    summary.r = r;
    summary.p = p;
    summary.size = n;
    summary.trials = trials;
    summary.seed = seed;
    std::vector<double> upper_ratios, lower_ratios;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto f = random_gaussian_signal(n, seed, trial_stream(n, t));
        const auto upper = maximal_upper(f, r, s_grid);
        const auto lower = maximal_lower(f, r, options.budget);
        const double f_norm = lp_norm(f, p);
        upper_ratios.push_back(lp_norm(upper.upper, p) / f_norm);
        lower_ratios.push_back(lp_norm(lower.lower, p) / f_norm);
        summary.sandwich_violations += count_sandwich_violations(lower.lower, upper.upper, f.sup_norm());
        summary.certified = summary.certified && upper.certified;
    }
    summary.upper = summarize(std::move(upper_ratios));
    summary.lower = summarize(std::move(lower_ratios));
    return summary;
}

}  // namespace varmult
