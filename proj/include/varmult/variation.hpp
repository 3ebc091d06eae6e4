#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "varmult/grid.hpp"

namespace varmult {

/// Optimal value of sup over index subsequences i_0 < ... < i_M of
/// sum_t |m(i_t) - m(i_{t-1})|^r, together with one subsequence attaining it.
struct VariationResult {
    double power = 0.0;
    /// Increasing indices into the input; empty when the input is constant.
    std::vector<std::size_t> subsequence;
};

/// Exact O(N^2) dynamic program. Consecutive repeated values are collapsed first,
/// which leaves the supremum unchanged. Among equally good predecessors the
/// smallest index wins.
VariationResult variation_power_with_witness(std::span<const double> values, double r);

double variation_power(std::span<const double> values, double r);
inline double variation_power(const Multiplier& m, double r) { return variation_power(m.values(), r); }

/// sup |m| + variation_power(m, r)^(1/r).
double vr_norm(std::span<const double> values, double r);
inline double vr_norm(const Multiplier& m, double r) { return vr_norm(m.values(), r); }

/// m / vr_norm(m, r). Throws InvalidArgument for the zero multiplier.
Multiplier normalize_to_unit_ball(const Multiplier& m, double r);

/// One element of the subdifferential of vr_norm at m, built from the DP witness
/// subsequence and an index attaining the sup.
struct NormSubgradient {
    double norm = 0.0;
    std::vector<double> gradient;
};
NormSubgradient vr_norm_subgradient(std::span<const double> values, double r);

/// |d|^r with exact fast paths for r = 1 and r = 2.
double abs_pow(double d, double r);

}  // namespace varmult
