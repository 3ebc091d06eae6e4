#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "varmult/grid.hpp"

namespace varmult {

/// Allowed interval endpoints, given as cut positions b in [0, N]: cut b sits
/// just before the centered-array index b, so [a, b) covers indices a..b-1.
class EndpointGrid {
public:
    /// Throws InvalidArgument unless cuts are strictly increasing and include 0 and n.
    EndpointGrid(std::size_t n, std::vector<std::size_t> cuts);
    static EndpointGrid full(std::size_t n);
    static EndpointGrid every(std::size_t n, std::size_t stride);
    /// Full grid for n <= 256, every second cut above.
    static EndpointGrid default_for(std::size_t n);

    std::size_t size() const { return n_; }
    std::span<const std::size_t> cuts() const { return cuts_; }
    /// Number of elementary segments between consecutive cuts.
    std::size_t segments() const { return cuts_.size() - 1; }
    bool is_full() const { return cuts_.size() == n_ + 1; }

    /// Centered-frequency interval for the cut pair (a, b), a < b.
    FreqInterval interval(std::size_t a_index, std::size_t b_index) const;

private:
    std::size_t n_;
    std::vector<std::size_t> cuts_;
};

struct SquareFunctionField {
    std::size_t size = 0;
    double s = 2.0;
    std::vector<double> values;
    /// Set for the fixed-collection variant.
    std::optional<IntervalCollection> collection;
    /// Per-point maximizing collections; empty unless requested.
    std::vector<IntervalCollection> witness;
    /// False when the supremum was restricted to a coarse endpoint grid.
    bool full_grid = true;
};

/// (sum_{I in C} |partial_sum(f, I)(x)|^s)^(1/s) at every x.
SquareFunctionField square_function(const GridFunction& f, const IntervalCollection& collection, double s);

/// Per-point supremum of the l^s square function over all disjoint interval
/// collections with endpoints on the grid, by dynamic programming over prefix
/// partial sums. Witnesses are included.
SquareFunctionField var_carleson(const GridFunction& f, double s, const std::optional<EndpointGrid>& grid = std::nullopt);

/// Several exponents sharing one pass over the prefix sums.
std::vector<SquareFunctionField> var_carleson_multi(const GridFunction& f, std::span<const double> exponents,
                                                    const EndpointGrid& grid, bool with_witness);

/// C_coef * C_count^(1/s') / (1 - 2^(1/s' - 1/r)): the constant of the pointwise
/// domination |(m f^)v(x)| <= C * sup_I (sum |(1_I f^)v(x)|^s)^(1/s) for every
/// unit-ball m, given a decomposition with the stated per-level constants.
/// Throws HypothesisViolation when s >= r' (the level series diverges).
double chain_constant(double r, double s, double count_constant, double coef_constant);
double chain_constant(const ExponentConfig& cfg, double count_constant, double coef_constant);

struct ChainReport {
    double constant = 0.0;
    /// max_x |Tm f(x)| / (constant * V_s f(x)), over points with nonzero denominator.
    double max_ratio = 0.0;
    std::size_t violations = 0;
    bool pass = true;
};

/// Checks |apply_multiplier(f, m)(x)| <= constant * var_carleson(f, s)(x) + 1e-9 ||f||_inf
/// at every x, on the full endpoint grid. Throws InvalidArgument when vr_norm(m, r) > 1 + 1e-9.
ChainReport verify_chain(const Multiplier& m, const GridFunction& f, const ExponentConfig& cfg);

/// Per-point helper shared with the maximal module: contributions
/// c_k(x) = f^(k) e^{2 pi i k x / N} / N in centered order.
class PointContributions {
public:
    explicit PointContributions(const Spectrum& spectrum);
    std::size_t size() const { return n_; }
    void fill(std::size_t x, std::vector<Complex>& out) const;

private:
    std::size_t n_;
    std::vector<Complex> coeffs_;
    std::vector<Complex> roots_;
};

}  // namespace varmult
