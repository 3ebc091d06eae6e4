#include "varmult/squarefun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "varmult/decompose.hpp"
#include "varmult/variation.hpp"

namespace varmult {

namespace {

// |z|^s from |z|^2, guarded at zero.
double pow_from_sq(double sq, double s) { return sq > 0.0 ? std::exp(0.5 * s * std::log(sq)) : 0.0; }

struct DpState {
    double value = 0.0;
    std::size_t count = 0;
    std::size_t last_len = 0;
};

bool better(const DpState& cand, const DpState& cur) {
    if (cand.value != cur.value) return cand.value > cur.value;
    if (cand.count != cur.count) return cand.count < cur.count;
    return cand.last_len < cur.last_len;
}

// Flat storage for the strictly upper triangle u < t of a (K+1) x (K+1) table.
inline std::size_t pair_index(std::size_t u, std::size_t t) { return t * (t - 1) / 2 + u; }

}  // namespace

EndpointGrid::EndpointGrid(std::size_t n, std::vector<std::size_t> cuts) : n_(n), cuts_(std::move(cuts)) {
    if (cuts_.size() < 2 || cuts_.front() != 0 || cuts_.back() != n_) {
        throw InvalidArgument("endpoint grid must include both extreme cuts 0 and " + std::to_string(n_));
    }
    for (std::size_t i = 1; i < cuts_.size(); ++i) {
        if (cuts_[i] <= cuts_[i - 1]) throw InvalidArgument("endpoint grid must be strictly increasing");
    }
}

EndpointGrid EndpointGrid::full(std::size_t n) { return every(n, 1); }

EndpointGrid EndpointGrid::every(std::size_t n, std::size_t stride) {
    if (stride == 0) throw InvalidArgument("endpoint grid stride must be positive");
    std::vector<std::size_t> cuts;
    for (std::size_t b = 0; b < n; b += stride) cuts.push_back(b);
    cuts.push_back(n);
    return EndpointGrid(n, std::move(cuts));
}

EndpointGrid EndpointGrid::default_for(std::size_t n) { return every(n, n <= 256 ? 1 : 2); }

FreqInterval EndpointGrid::interval(std::size_t a_index, std::size_t b_index) const {
    const auto offset = freq_offset(n_);
    return {static_cast<std::ptrdiff_t>(cuts_[a_index]) - offset, static_cast<std::ptrdiff_t>(cuts_[b_index]) - 1 - offset};
}

PointContributions::PointContributions(const Spectrum& spectrum)
    : n_(spectrum.size()), coeffs_(spectrum.coeffs().begin(), spectrum.coeffs().end()), roots_(n_) {
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& c : coeffs_) c *= scale;
    for (std::size_t t = 0; t < n_; ++t) {
        roots_[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n_));
    }
}

void PointContributions::fill(std::size_t x, std::vector<Complex>& out) const {
    out.resize(n_);
    const auto n = static_cast<std::ptrdiff_t>(n_);
    const auto offset = freq_offset(n_);
    const auto xi = static_cast<std::ptrdiff_t>(x);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i) - offset;
        const auto phase = ((k * xi) % n + n) % n;
        out[i] = coeffs_[i] * roots_[static_cast<std::size_t>(phase)];
    }
}

SquareFunctionField square_function(const GridFunction& f, const IntervalCollection& collection, double s) {
    if (!(s >= 1.0)) throw InvalidArgument("square_function: s must be >= 1");
    collection.check_range(f.size());
    SquareFunctionField field;
    field.size = f.size();
    field.s = s;
    field.collection = collection;
    std::vector<double> sums(f.size(), 0.0);
    for (const auto& interval : collection.items()) {
        const auto piece = partial_sum(f, interval);
        for (std::size_t x = 0; x < f.size(); ++x) sums[x] += pow_from_sq(std::norm(piece[x]), s);
    }
    field.values.resize(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) field.values[x] = sums[x] > 0.0 ? std::pow(sums[x], 1.0 / s) : 0.0;
    return field;
}

std::vector<SquareFunctionField> var_carleson_multi(const GridFunction& f, std::span<const double> exponents,
                                                    const EndpointGrid& grid, bool with_witness) {
    if (grid.size() != f.size()) throw SizeMismatch(f.size(), grid.size());
    for (double s : exponents) {
        if (!(s > 1.0) || !std::isfinite(s)) throw InvalidArgument("var_carleson: s must be > 1");
    }
    const std::size_t n = f.size();
    const std::size_t segments = grid.segments();
    const auto cuts = grid.cuts();
    const PointContributions contributions(dft(f));

    std::vector<SquareFunctionField> fields(exponents.size());
    for (std::size_t e = 0; e < exponents.size(); ++e) {
        fields[e].size = n;
        fields[e].s = exponents[e];
        fields[e].values.assign(n, 0.0);
        fields[e].full_grid = grid.is_full();
        if (with_witness) fields[e].witness.resize(n);
    }

#pragma omp parallel
    {
        std::vector<Complex> c;
        std::vector<Complex> prefix(segments + 1);
        std::vector<double> log_sq(segments * (segments + 1) / 2);
        std::vector<DpState> best(segments + 1);
        constexpr std::size_t kSkip = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> choice(segments + 1);

#pragma omp for schedule(dynamic, 4)
        for (std::size_t x = 0; x < n; ++x) {
            contributions.fill(x, c);
            Complex run{};
            std::size_t next_cut = 1;
            prefix[0] = Complex{};
            for (std::size_t i = 0; i < n; ++i) {
                run += c[i];
                if (i + 1 == cuts[next_cut]) prefix[next_cut++] = run;
            }
            for (std::size_t t = 1; t <= segments; ++t) {
                for (std::size_t u = 0; u < t; ++u) {
                    const double sq = std::norm(prefix[t] - prefix[u]);
                    log_sq[pair_index(u, t)] = sq > 0.0 ? std::log(sq) : -std::numeric_limits<double>::infinity();
                }
            }

            for (std::size_t e = 0; e < exponents.size(); ++e) {
                const double half_s = 0.5 * exponents[e];
                best[0] = {};
                for (std::size_t t = 1; t <= segments; ++t) {
                    DpState cur = best[t - 1];
                    std::size_t arg = kSkip;
                    for (std::size_t u = 0; u < t; ++u) {
                        const double l = log_sq[pair_index(u, t)];
                        const double w = std::isinf(l) ? 0.0 : std::exp(half_s * l);
                        DpState cand{best[u].value + w, best[u].count + 1, cuts[t] - cuts[u]};
                        if (better(cand, cur)) {
                            cur = cand;
                            arg = u;
                        }
                    }
                    best[t] = cur;
                    choice[t] = arg;
                }
                const double total = best[segments].value;
                fields[e].values[x] = total > 0.0 ? std::pow(total, 1.0 / exponents[e]) : 0.0;

                if (with_witness) {
                    std::vector<FreqInterval> items;
                    std::size_t t = segments;
                    while (t > 0) {
                        if (choice[t] == kSkip) {
                            --t;
                        } else {
                            items.push_back(grid.interval(choice[t], t));
                            t = choice[t];
                        }
                    }
                    fields[e].witness[x] = IntervalCollection(std::move(items));
                }
            }
        }
    }
    return fields;
}

SquareFunctionField var_carleson(const GridFunction& f, double s, const std::optional<EndpointGrid>& grid) {
    const double exponents[] = {s};
    auto fields = var_carleson_multi(f, exponents, grid ? *grid : EndpointGrid::default_for(f.size()), true);
    return std::move(fields.front());
}

double chain_constant(double r, double s, double count_constant, double coef_constant) {
    if (!(r >= 1.0)) throw InvalidArgument("chain_constant: r must be >= 1");
    if (!(s > 1.0)) throw InvalidArgument("chain_constant: s must be > 1");
    if (!(count_constant > 0.0) || !(coef_constant > 0.0)) {
        throw InvalidArgument("chain_constant: decomposition constants must be positive");
    }
    if (!(s < ExponentConfig::conjugate(r))) {
        throw HypothesisViolation("chain_constant: s = " + std::to_string(s) + " must be below r' = " +
                                  std::to_string(ExponentConfig::conjugate(r)));
    }
    const double inv_s_conj = 1.0 - 1.0 / s;
    const double ratio = std::exp2(inv_s_conj - 1.0 / r);
    return coef_constant * std::pow(count_constant, inv_s_conj) / (1.0 - ratio);
}

double chain_constant(const ExponentConfig& cfg, double count_constant, double coef_constant) {
    return chain_constant(cfg.r(), cfg.s(), count_constant, coef_constant);
}

ChainReport verify_chain(const Multiplier& m, const GridFunction& f, const ExponentConfig& cfg) {
    if (m.size() != f.size()) throw SizeMismatch(f.size(), m.size());
    if (vr_norm(m, cfg.r()) > 1.0 + 1e-9) throw InvalidArgument("verify_chain: multiplier outside the V^r unit ball");

    ChainReport report;
    report.constant = chain_constant(cfg, kCountConstant, kCoefConstant);
    const auto image = apply_multiplier(f, m);
    const auto bound = var_carleson(f, cfg.s(), EndpointGrid::full(f.size()));
    const double slack = 1e-9 * f.sup_norm();
    for (std::size_t x = 0; x < f.size(); ++x) {
        const double lhs = std::abs(image[x]);
        const double rhs = report.constant * bound.values[x];
        if (rhs > 0.0) report.max_ratio = std::max(report.max_ratio, lhs / rhs);
        if (lhs > rhs + slack) ++report.violations;
    }
    report.pass = report.violations == 0;
    return report;
}

}  // namespace varmult
