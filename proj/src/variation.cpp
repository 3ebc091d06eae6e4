#include "varmult/variation.hpp"

#include <algorithm>
#include <cmath>

namespace varmult {

namespace {

void check_exponent(double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidArgument("variation exponent r must satisfy r >= 1");
}

// First index of each maximal run of equal values.
std::vector<std::size_t> run_starts(std::span<const double> values) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i == 0 || values[i] != values[i - 1]) starts.push_back(i);
    }
    return starts;
}

}  // namespace

double abs_pow(double d, double r) {
    const double a = std::abs(d);
    if (r == 1.0) return a;
    if (r == 2.0) return a * a;
    if (a == 0.0) return 0.0;
    return std::pow(a, r);
}

VariationResult variation_power_with_witness(std::span<const double> values, double r) {
    check_exponent(r);
    const auto reps = run_starts(values);
    const std::size_t n = reps.size();
    VariationResult result;
    if (n < 2) return result;

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = values[reps[i]];

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<double> best(n, 0.0);
    std::vector<std::size_t> prev(n, kNone);
    for (std::size_t i = 1; i < n; ++i) {
        double top = 0.0;
        std::size_t arg = kNone;
        for (std::size_t j = 0; j < i; ++j) {
            const double cand = best[j] + abs_pow(v[i] - v[j], r);
            if (cand > top) {
                top = cand;
                arg = j;
            }
        }
        best[i] = top;
        prev[i] = arg;
    }

    std::size_t end = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (best[i] > best[end]) end = i;
    }
    result.power = best[end];
    if (prev[end] == kNone) return result;
    for (std::size_t i = end; i != kNone; i = prev[i]) result.subsequence.push_back(reps[i]);
    std::reverse(result.subsequence.begin(), result.subsequence.end());
    return result;
}

double variation_power(std::span<const double> values, double r) {
    return variation_power_with_witness(values, r).power;
}

double vr_norm(std::span<const double> values, double r) {
    double sup = 0.0;
    for (double v : values) sup = std::max(sup, std::abs(v));
    return sup + std::pow(variation_power(values, r), 1.0 / r);
}

Multiplier normalize_to_unit_ball(const Multiplier& m, double r) {
    const double norm = vr_norm(m, r);
    if (norm == 0.0) throw InvalidArgument("cannot normalize the zero multiplier");
    return m.scaled(1.0 / norm);
}

NormSubgradient vr_norm_subgradient(std::span<const double> values, double r) {
    NormSubgradient out;
    out.gradient.assign(values.size(), 0.0);
    if (values.empty()) return out;

    std::size_t peak = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i]) > std::abs(values[peak])) peak = i;
    }
    out.gradient[peak] = values[peak] >= 0.0 ? 1.0 : -1.0;

    const auto var = variation_power_with_witness(values, r);
    out.norm = std::abs(values[peak]) + std::pow(var.power, 1.0 / r);
    if (var.power == 0.0) return out;

    // d/dm of P^(1/r) = (1/r) P^(1/r - 1) dP, dP from each consecutive pair of the witness.
    const double outer = std::pow(var.power, 1.0 / r - 1.0) / r;
    const auto& seq = var.subsequence;
    for (std::size_t t = 1; t < seq.size(); ++t) {
        const double d = values[seq[t]] - values[seq[t - 1]];
        const double inner = r * abs_pow(d, r - 1.0) * (d > 0.0 ? 1.0 : -1.0);
        out.gradient[seq[t]] += outer * inner;
        out.gradient[seq[t - 1]] -= outer * inner;
    }
    return out;
}

}  // namespace varmult
