#include "varmult/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "varmult/variation.hpp"

namespace varmult {

namespace {

double level_threshold(double rho, double r, std::size_t j) {
    return rho * std::exp2(-static_cast<double>(j) / r);
}

std::vector<LevelPiece> nonzero_runs(std::span<const double> values) {
    const std::size_t n = values.size();
    const auto offset = freq_offset(n);
    std::vector<LevelPiece> pieces;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[j + 1] == values[i]) ++j;
        if (values[i] != 0.0) {
            pieces.push_back({{static_cast<std::ptrdiff_t>(i) - offset, static_cast<std::ptrdiff_t>(j) - offset},
                              values[i]});
        }
        i = j + 1;
    }
    return pieces;
}

void add_level(std::vector<double>& acc, const std::vector<LevelPiece>& level) {
    const auto offset = freq_offset(acc.size());
    for (const auto& piece : level) {
        for (auto k = piece.interval.lo; k <= piece.interval.hi; ++k) {
            acc[static_cast<std::size_t>(k + offset)] += piece.coeff;
        }
    }
}

}  // namespace

StepApproximation greedy_step_approx(const Multiplier& m, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("greedy_step_approx: eps must be positive");
    const std::size_t n = m.size();
    StepApproximation out{{0}, m};
    std::vector<double> step(n);
    std::size_t anchor = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && std::abs(m[i] - m[anchor]) >= eps) {
            anchor = i;
            out.stops.push_back(i);
        }
        step[i] = m[anchor];
    }
    out.step = Multiplier(std::move(step));
    return out;
}

Decomposition decompose(const Multiplier& m, double r, double tol) {
    if (!(r >= 1.0)) throw InvalidArgument("decompose: r must be >= 1");
    if (!(tol > 0.0)) throw InvalidArgument("decompose: tol must be positive");
    const std::size_t n = m.size();

    Decomposition d;
    d.size = n;
    d.r = r;
    d.rho = vr_norm(m, r);
    d.residual.assign(n, 0.0);

    if (variation_power(m, r) == 0.0) {
        // Constant multiplier: one piece at level 0, nothing left over.
        d.levels.push_back({{full_range(n), m[0]}});
        return d;
    }

    std::size_t levels = 0;
    while (level_threshold(d.rho, r, levels) > tol) ++levels;

    std::vector<double> previous(n, 0.0);
    for (std::size_t j = 0; j <= levels; ++j) {
        auto approx = greedy_step_approx(m, level_threshold(d.rho, r, j));
        std::vector<double> diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = approx.step[i] - previous[i];
        d.levels.push_back(nonzero_runs(diff));
        previous.assign(approx.step.values().begin(), approx.step.values().end());
    }

    auto total = reconstruct(d, n);
    for (std::size_t i = 0; i < n; ++i) {
        d.residual[i] = m[i] - total[i];
        d.residual_sup = std::max(d.residual_sup, std::abs(d.residual[i]));
    }
    return d;
}

Decomposition decompose(const Multiplier& m, double r) {
    const double rho = vr_norm(m, r);
    // A zero multiplier has nothing to resolve; any positive tol gives the same result.
    return decompose(m, r, rho > 0.0 ? 1e-6 * rho : 1.0);
}

Multiplier reconstruct(const Decomposition& d, std::size_t n) {
    std::vector<double> acc(n, 0.0);
    for (const auto& level : d.levels) {
        for (const auto& piece : level) piece.interval.check_range(n);
        add_level(acc, level);
    }
    return Multiplier(std::move(acc));
}

std::vector<Multiplier> partial_reconstructions(const Decomposition& d, std::size_t n) {
    std::vector<Multiplier> out;
    std::vector<double> acc(n, 0.0);
    for (const auto& level : d.levels) {
        for (const auto& piece : level) piece.interval.check_range(n);
        add_level(acc, level);
        out.emplace_back(acc);
    }
    return out;
}

LemmaReport verify_lemma_bounds(const Decomposition& d) {
    LemmaReport report;
    for (std::size_t j = 0; j < d.levels.size(); ++j) {
        const auto& level = d.levels[j];
        const double jd = static_cast<double>(j);
        LevelReport lr;
        lr.count = level.size();
        for (const auto& piece : level) lr.max_coeff = std::max(lr.max_coeff, std::abs(piece.coeff));
        lr.count_bound = kCountConstant * std::exp2(jd);
        lr.coeff_bound = kCoefConstant * std::exp2(-jd / d.r) * d.rho;
        // A constant multiplier has rho = |c| and its single piece meets the bound with equality.
        lr.pass = static_cast<double>(lr.count) <= lr.count_bound && lr.max_coeff <= lr.coeff_bound;

        const double shifted_count = std::exp2(jd + kLevelShift);
        const double shifted_coeff = std::exp2((kLevelShift - jd) / d.r) * d.rho;
        lr.shifted_pass = static_cast<double>(lr.count) <= shifted_count && lr.max_coeff <= shifted_coeff;

        std::vector<FreqInterval> intervals;
        for (const auto& piece : level) intervals.push_back(piece.interval);
        std::sort(intervals.begin(), intervals.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i].lo <= intervals[i - 1].hi) report.disjoint = false;
        }

        report.pass = report.pass && lr.pass;
        report.shifted_pass = report.shifted_pass && lr.shifted_pass;
        report.levels.push_back(lr);
    }
    report.pass = report.pass && report.disjoint;
    return report;
}

}  // namespace varmult
