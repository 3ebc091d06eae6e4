#include "varmult/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace varmult::oracle {

namespace {

Complex unit_root(std::ptrdiff_t k, std::size_t x, std::size_t n, double sign) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(x) /
                         static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

double max_norm(std::span<const double> values) {
    double top = 0.0;
    for (double v : values) top = std::max(top, std::abs(v));
    return top;
}

}  // namespace

std::vector<Complex> naive_dft(std::span<const Complex> f) {
    const std::size_t n = f.size();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i) - freq_offset(n);
        Complex acc{};
        for (std::size_t x = 0; x < n; ++x) acc += f[x] * unit_root(k, x, n, -1.0);
        out[i] = acc;
    }
    return out;
}

std::vector<Complex> naive_inverse_dft(std::span<const Complex> coeffs) {
    const std::size_t n = coeffs.size();
    std::vector<Complex> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        Complex acc{};
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::ptrdiff_t>(i) - freq_offset(n);
            acc += coeffs[i] * unit_root(k, x, n, 1.0);
        }
        out[x] = acc / static_cast<double>(n);
    }
    return out;
}

std::vector<Complex> naive_apply(std::span<const Complex> f, std::span<const double> m) {
    auto spectrum = naive_dft(f);
    for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= m[i];
    return naive_inverse_dft(spectrum);
}

double exhaustive_variation_power(std::span<const double> values, double r) {
    const std::size_t n = values.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double total = 0.0;
        bool have_prev = false;
        double prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1U)) continue;
            if (have_prev) total += std::pow(std::abs(values[i] - prev), r);
            prev = values[i];
            have_prev = true;
        }
        best = std::max(best, total);
    }
    return best;
}

std::vector<double> exhaustive_var_carleson(const GridFunction& f, double s, const EndpointGrid& grid) {
    const std::size_t n = f.size();
    const auto spectrum = naive_dft(f.values());
    const auto cuts = grid.cuts();
    const std::size_t k = cuts.size();
    std::vector<double> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        // weight[u][t] = |sum over frequencies in [cuts[u], cuts[t]) of the x-contribution|^s
        std::vector<std::vector<double>> weight(k, std::vector<double>(k, 0.0));
        for (std::size_t u = 0; u < k; ++u) {
            for (std::size_t t = u + 1; t < k; ++t) {
                Complex acc{};
                for (std::size_t i = cuts[u]; i < cuts[t]; ++i) {
                    const auto freq = static_cast<std::ptrdiff_t>(i) - freq_offset(n);
                    acc += spectrum[i] * unit_root(freq, x, n, 1.0);
                }
                weight[u][t] = std::pow(std::abs(acc / static_cast<double>(n)), s);
            }
        }
        double best = 0.0;
        // Enumerate: at cut position t either no interval starts there, or [t, u) is taken.
        std::function<void(std::size_t, double)> walk = [&](std::size_t t, double acc) {
            if (t + 1 >= k) {
                best = std::max(best, acc);
                return;
            }
            walk(t + 1, acc);
            for (std::size_t u = t + 1; u < k; ++u) walk(u, acc + weight[t][u]);
        };
        walk(0, 0.0);
        out[x] = std::pow(best, 1.0 / s);
    }
    return out;
}

std::vector<double> step_grid_search(const GridFunction& f, double r, std::size_t max_jumps,
                                     std::span<const double> levels) {
    const std::size_t n = f.size();
    const auto spectrum = naive_dft(f.values());
    std::vector<double> best(n, 0.0);
    std::vector<double> m(n);

    auto score = [&](const std::vector<double>& run_values) {
        // vr_norm of a step function equals that of its run values; enumerate subsets directly.
        const double norm = max_norm(run_values) + std::pow(exhaustive_variation_power(run_values, r), 1.0 / r);
        if (norm == 0.0) return;
        std::vector<Complex> product(spectrum);
        for (std::size_t i = 0; i < n; ++i) product[i] *= m[i] / norm;
        const auto image = naive_inverse_dft(product);
        for (std::size_t x = 0; x < n; ++x) best[x] = std::max(best[x], std::abs(image[x]));
    };

    // Breakpoint sets of size <= max_jumps, then every assignment of levels to the runs.
    std::function<void(std::size_t, std::vector<std::size_t>&)> choose = [&](std::size_t from,
                                                                             std::vector<std::size_t>& breaks) {
        const std::size_t runs = breaks.size() + 1;
        std::vector<std::size_t> pick(runs, 0);
        while (true) {
            std::vector<double> run_values(runs);
            for (std::size_t q = 0; q < runs; ++q) run_values[q] = levels[pick[q]];
            std::size_t run = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (run < breaks.size() && i == breaks[run]) ++run;
                m[i] = run_values[run];
            }
            score(run_values);
            std::size_t q = 0;
            while (q < runs && ++pick[q] == levels.size()) pick[q++] = 0;
            if (q == runs) break;
        }
        if (breaks.size() == max_jumps) return;
        for (std::size_t b = from; b < n; ++b) {
            breaks.push_back(b);
            choose(b + 1, breaks);
            breaks.pop_back();
        }
    };
    std::vector<std::size_t> breaks;
    choose(1, breaks);
    return best;
}

}  // namespace varmult::oracle
