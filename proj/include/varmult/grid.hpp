#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "varmult/errors.hpp"

namespace varmult {

using Complex = std::complex<double>;

/// Offset of centered frequency 0 inside a length-n centered array:
/// index i holds frequency i - offset, frequencies run from -ceil(n/2) to floor(n/2)-1.
constexpr std::ptrdiff_t freq_offset(std::size_t n) { return static_cast<std::ptrdiff_t>((n + 1) / 2); }
constexpr std::ptrdiff_t min_freq(std::size_t n) { return -freq_offset(n); }
constexpr std::ptrdiff_t max_freq(std::size_t n) { return static_cast<std::ptrdiff_t>(n / 2) - 1; }

bool is_power_of_two(std::size_t n);

/// Complex signal on Z_N, indexed by position x.
class GridFunction {
public:
    explicit GridFunction(std::vector<Complex> values);
    static GridFunction zeros(std::size_t n);

    std::size_t size() const { return values_.size(); }
    std::span<const Complex> values() const { return values_; }
    const Complex& operator[](std::size_t x) const { return values_[x]; }

    double sup_norm() const;

private:
    std::vector<Complex> values_;
};

/// DFT coefficients stored in increasing centered-frequency order.
class Spectrum {
public:
    explicit Spectrum(std::vector<Complex> coeffs);

    std::size_t size() const { return coeffs_.size(); }
    std::span<const Complex> coeffs() const { return coeffs_; }
    /// Coefficient at centered frequency k.
    const Complex& at(std::ptrdiff_t k) const;

private:
    std::vector<Complex> coeffs_;
};

/// Real multiplier sampled on the centered frequency grid, increasing order.
/// Any positive length is accepted; sizes are matched against a GridFunction when applied.
class Multiplier {
public:
    explicit Multiplier(std::vector<double> values);
    static Multiplier constant(std::size_t n, double value);

    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double at(std::ptrdiff_t k) const { return values_[static_cast<std::size_t>(k + freq_offset(size()))]; }

    double sup_norm() const;
    Multiplier scaled(double factor) const;

private:
    std::vector<double> values_;
};

/// Closed range [lo, hi] of centered frequencies.
struct FreqInterval {
    std::ptrdiff_t lo = 0;
    std::ptrdiff_t hi = 0;

    std::size_t length() const { return static_cast<std::size_t>(hi - lo + 1); }
    bool contains(std::ptrdiff_t k) const { return lo <= k && k <= hi; }
    /// Throws InvalidArgument unless lo <= hi and both lie in the centered range for n.
    void check_range(std::size_t n) const;

    friend bool operator==(const FreqInterval&, const FreqInterval&) = default;
};

/// The interval covering every frequency of an n-point grid.
FreqInterval full_range(std::size_t n);

Multiplier indicator(std::size_t n, const FreqInterval& interval, double height = 1.0);

/// Pairwise-disjoint intervals, sorted by lo.
class IntervalCollection {
public:
    IntervalCollection() = default;
    /// Sorts the input; throws InvalidArgument on overlap.
    explicit IntervalCollection(std::vector<FreqInterval> items);

    std::span<const FreqInterval> items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    void check_range(std::size_t n) const;

    friend bool operator==(const IntervalCollection&, const IntervalCollection&) = default;

private:
    std::vector<FreqInterval> items_;
};

/// Exponent triple (r, p, s) with 1 <= r < 2, p > r, 2 < s < r', p > s'.
class ExponentConfig {
public:
    /// Throws HypothesisViolation when any constraint fails.
    static ExponentConfig make(double r, double p, double s);

    double r() const { return r_; }
    double p() const { return p_; }
    double s() const { return s_; }
    /// r/(r-1); +infinity at r = 1.
    double r_conj() const { return conjugate(r_); }
    double s_conj() const { return conjugate(s_); }

    static double conjugate(double q);

private:
    ExponentConfig(double r, double p, double s) : r_(r), p_(p), s_(s) {}
    double r_, p_, s_;
};

/// Throws HypothesisViolation unless 1 <= r < 2 and r < p < infinity.
void check_theorem_hypotheses(double r, double p);

Spectrum dft(const GridFunction& f);
GridFunction inverse_dft(const Spectrum& spectrum);

GridFunction apply_multiplier(const GridFunction& f, const Multiplier& m);
GridFunction partial_sum(const GridFunction& f, const FreqInterval& interval);

/// Normalized-counting-measure L^p norm, ((1/N) sum |f|^p)^(1/p); p = infinity gives the max.
double lp_norm(const GridFunction& f, double p);
double lp_norm(std::span<const double> values, double p);

}  // namespace varmult
