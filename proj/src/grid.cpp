#include "varmult/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace varmult {

namespace {

template <typename T>
void require_finite(std::span<const T> values, const char* what) {
    for (const auto& v : values) {
        bool finite;
        if constexpr (std::is_same_v<T, Complex>) {
            finite = std::isfinite(v.real()) && std::isfinite(v.imag());
        } else {
            finite = std::isfinite(v);
        }
        if (!finite) throw InvalidArgument(std::string(what) + ": non-finite entry");
    }
}

void require_grid_size(std::size_t n, const char* what) {
    if (!is_power_of_two(n)) {
        throw InvalidArgument(std::string(what) + ": size must be a positive power of two, got " +
                              std::to_string(n));
    }
}

// The FFTW planner is not thread-safe; execution of an existing plan is.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<Complex> in(n), out(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<Complex> transform(std::span<const Complex> input, int sign) {
    std::vector<Complex> in(input.begin(), input.end());
    std::vector<Complex> out(input.size());
    fftw_plan plan = PlanCache::instance().get(input.size(), sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(std::vector<Complex> values) : values_(std::move(values)) {
    require_grid_size(values_.size(), "GridFunction");
    require_finite<Complex>(values_, "GridFunction");
}

GridFunction GridFunction::zeros(std::size_t n) { return GridFunction(std::vector<Complex>(n)); }

double GridFunction::sup_norm() const {
    double best = 0.0;
    for (const auto& v : values_) best = std::max(best, std::abs(v));
    return best;
}

Spectrum::Spectrum(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    require_grid_size(coeffs_.size(), "Spectrum");
    require_finite<Complex>(coeffs_, "Spectrum");
}

const Complex& Spectrum::at(std::ptrdiff_t k) const {
    if (k < min_freq(size()) || k > max_freq(size())) throw InvalidArgument("frequency out of range");
    return coeffs_[static_cast<std::size_t>(k + freq_offset(size()))];
}

Multiplier::Multiplier(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidArgument("Multiplier: empty");
    require_finite<double>(values_, "Multiplier");
}

Multiplier Multiplier::constant(std::size_t n, double value) { return Multiplier(std::vector<double>(n, value)); }

double Multiplier::sup_norm() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::abs(v));
    return best;
}

Multiplier Multiplier::scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= factor;
    return Multiplier(std::move(out));
}

void FreqInterval::check_range(std::size_t n) const {
    if (lo > hi || lo < min_freq(n) || hi > max_freq(n)) {
        throw InvalidArgument("interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "] outside frequency range of size " + std::to_string(n));
    }
}

FreqInterval full_range(std::size_t n) { return {min_freq(n), max_freq(n)}; }

Multiplier indicator(std::size_t n, const FreqInterval& interval, double height) {
    interval.check_range(n);
    std::vector<double> values(n, 0.0);
    for (auto k = interval.lo; k <= interval.hi; ++k) values[static_cast<std::size_t>(k + freq_offset(n))] = height;
    return Multiplier(std::move(values));
}

IntervalCollection::IntervalCollection(std::vector<FreqInterval> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (items_[i].lo > items_[i].hi) throw InvalidArgument("interval with lo > hi");
        if (i > 0 && items_[i].lo <= items_[i - 1].hi) throw InvalidArgument("overlapping intervals in collection");
    }
}

void IntervalCollection::check_range(std::size_t n) const {
    for (const auto& item : items_) item.check_range(n);
}

double ExponentConfig::conjugate(double q) {
    if (q == 1.0) return std::numeric_limits<double>::infinity();
    return q / (q - 1.0);
}

void check_theorem_hypotheses(double r, double p) {
    if (!(r >= 1.0 && r < 2.0)) {
        throw HypothesisViolation("r = " + std::to_string(r) + " violates 1 <= r < 2");
    }
    if (!(p > r) || !std::isfinite(p)) {
        throw HypothesisViolation("p = " + std::to_string(p) + " violates r < p < infinity (r = " +
                                  std::to_string(r) + ")");
    }
}

ExponentConfig ExponentConfig::make(double r, double p, double s) {
    check_theorem_hypotheses(r, p);
    if (!(s > 2.0) || !(s < conjugate(r))) {
        throw HypothesisViolation("s = " + std::to_string(s) + " violates 2 < s < r' = " +
                                  std::to_string(conjugate(r)));
    }
    if (!(p > conjugate(s))) {
        throw HypothesisViolation("p = " + std::to_string(p) + " violates p > s' = " + std::to_string(conjugate(s)));
    }
    return ExponentConfig(r, p, s);
}

Spectrum dft(const GridFunction& f) {
    const std::size_t n = f.size();
    auto raw = transform(f.values(), FFTW_FORWARD);
    // Natural order holds frequency j mod n at slot j; rotate into centered order.
    std::vector<Complex> centered(n);
    const auto offset = freq_offset(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto k = static_cast<std::ptrdiff_t>(i) - offset;
        auto slot = static_cast<std::size_t>(((k % static_cast<std::ptrdiff_t>(n)) + static_cast<std::ptrdiff_t>(n)) %
                                             static_cast<std::ptrdiff_t>(n));
        centered[i] = raw[slot];
    }
    return Spectrum(std::move(centered));
}

GridFunction inverse_dft(const Spectrum& spectrum) {
    const std::size_t n = spectrum.size();
    const auto offset = freq_offset(n);
    std::vector<Complex> natural(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto k = static_cast<std::ptrdiff_t>(i) - offset;
        auto slot = static_cast<std::size_t>(((k % static_cast<std::ptrdiff_t>(n)) + static_cast<std::ptrdiff_t>(n)) %
                                             static_cast<std::ptrdiff_t>(n));
        natural[slot] = spectrum.coeffs()[i];
    }
    auto out = transform(natural, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return GridFunction(std::move(out));
}

GridFunction apply_multiplier(const GridFunction& f, const Multiplier& m) {
    if (m.size() != f.size()) throw SizeMismatch(f.size(), m.size());
    auto spectrum = dft(f);
    std::vector<Complex> product(spectrum.coeffs().begin(), spectrum.coeffs().end());
    for (std::size_t i = 0; i < product.size(); ++i) product[i] *= m[i];
    return inverse_dft(Spectrum(std::move(product)));
}

GridFunction partial_sum(const GridFunction& f, const FreqInterval& interval) {
    interval.check_range(f.size());
    return apply_multiplier(f, indicator(f.size(), interval));
}

double lp_norm(std::span<const double> values, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
    if (values.empty()) return 0.0;
    if (std::isinf(p)) {
        double best = 0.0;
        for (double v : values) best = std::max(best, std::abs(v));
        return best;
    }
    // Scale by the max to avoid overflow for large p.
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += std::pow(std::abs(v) / peak, p);
    return peak * std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

double lp_norm(const GridFunction& f, double p) {
    std::vector<double> moduli(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) moduli[x] = std::abs(f[x]);
    return lp_norm(moduli, p);
}

}  // namespace varmult
