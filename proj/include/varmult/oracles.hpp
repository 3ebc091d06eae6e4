#pragma once

// Brute-force reference computations. None of these call into the fast paths
// they are used to check: transforms are direct O(N^2) sums, suprema are
// exhaustive enumerations.

#include <cstddef>
#include <span>
#include <vector>

#include "varmult/grid.hpp"
#include "varmult/squarefun.hpp"

namespace varmult::oracle {

/// Direct summation, centered output order.
std::vector<Complex> naive_dft(std::span<const Complex> f);
/// Direct summation of (1/N) sum_k F(k) e^{2 pi i k x / N}, centered input order.
std::vector<Complex> naive_inverse_dft(std::span<const Complex> coeffs);
/// Naive transform, frequency-domain product, naive inverse.
std::vector<Complex> naive_apply(std::span<const Complex> f, std::span<const double> m);

/// Maximum over all 2^N index subsets. Only for N <= 20.
double exhaustive_variation_power(std::span<const double> values, double r);

/// Per-point maximum over every disjoint collection of intervals with endpoints
/// on the grid, enumerated one by one. Returns the s-th root.
std::vector<double> exhaustive_var_carleson(const GridFunction& f, double s, const EndpointGrid& grid);

/// Best |(m f^)v(x)| over step multipliers with at most `max_jumps` jumps whose
/// run values are drawn from `levels`, each normalized to the V^r unit ball.
std::vector<double> step_grid_search(const GridFunction& f, double r, std::size_t max_jumps,
                                     std::span<const double> levels);

}  // namespace varmult::oracle
