#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "varmult/grid.hpp"
#include "varmult/squarefun.hpp"

namespace varmult {

/// Maximum number of points for which full witness multipliers are kept.
inline constexpr std::size_t kMaxWitnessPoints = 16;

/// Seven evenly spaced exponents in (2, r'), pulled in from both ends by 5% of the gap.
/// r' is capped at kSGridCap so that r = 1 still yields a finite grid.
std::vector<double> default_s_grid(double r);
/// As above with the lower end raised to max(2, p') so that every s also satisfies p > s'.
std::vector<double> default_s_grid(double r, double p);
inline constexpr double kSGridCap = 8.0;

struct UpperBound {
    std::vector<double> upper;
    std::vector<double> s_used;
    std::vector<double> s_grid;
    std::vector<double> constants;
    /// False when the endpoint grid was coarser than every cut, in which case the
    /// supremum and hence the bound are only estimates from below.
    bool certified = true;
};

/// upper[x] = min_s chain_constant(r, s) * var_carleson(f, s)(x). Every s must satisfy 2 < s < r'.
UpperBound maximal_upper(const GridFunction& f, double r, std::span<const double> s_grid,
                         const std::optional<EndpointGrid>& grid = std::nullopt);

enum class CandidateFamily : std::uint8_t { None, Constant, Interval, Step, Ascent };
std::string_view family_name(CandidateFamily family);

struct LowerBudget {
    /// Subgradient steps per point; 0 disables the ascent stage.
    std::size_t ascent_steps = 16;
    /// Ascent runs at this many points with the largest pre-ascent value; 0 means every point.
    std::size_t ascent_points = 0;
    /// Initial step as a fraction of the iterate's sup norm.
    double initial_step = 0.2;
};

struct LowerBound {
    std::vector<double> lower;
    std::vector<CandidateFamily> family;
    /// Normalized multipliers attaining lower[x] for the requested witness points.
    std::map<std::size_t, Multiplier> witnesses;
};

/// Best |(m f^)v(x)| over several families of V^r unit-ball multipliers:
/// the constant 1, single-interval indicators, {-1,0,1} step functions with at
/// most 1, 2, 4, 8 jumps aligned with the pointwise phase, then projected
/// subgradient ascent from the best of those. At most kMaxWitnessPoints witnesses.
LowerBound maximal_lower(const GridFunction& f, double r, const LowerBudget& budget = {},
                         std::span<const std::size_t> witness_points = {},
                         const std::optional<EndpointGrid>& grid = std::nullopt);

struct LpSummary {
    double lower_norm = 0.0;
    double upper_norm = 0.0;
    double f_norm = 0.0;
    double lower_ratio = 0.0;
    double upper_ratio = 0.0;
};

struct BoundReport {
    std::size_t size = 0;
    double r = 1.0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> s_used;
    std::vector<double> s_grid;
    std::vector<double> constants;
    std::vector<CandidateFamily> family;
    std::map<std::size_t, Multiplier> witnesses;
    std::map<double, LpSummary> lp_summary;
    bool certified = true;
    /// Points where lower > upper + 1e-9 ||f||_inf.
    std::size_t sandwich_violations = 0;
};

/// Both bounds plus L^p summaries. Each p must satisfy the theorem hypotheses together with r.
BoundReport bound_report(const GridFunction& f, double r, std::span<const double> p_list,
                         std::span<const double> s_grid, const LowerBudget& budget,
                         std::span<const std::size_t> witness_points,
                         const std::optional<EndpointGrid>& grid = std::nullopt);

struct RatioStats {
    double max = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
};

struct OperatorNormSummary {
    double r = 1.0;
    double p = 2.0;
    std::size_t size = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    RatioStats upper;
    RatioStats lower;
    std::size_t sandwich_violations = 0;
    bool certified = true;
};

struct EmpiricalOptions {
    /// Empty means default_s_grid(r, p).
    std::vector<double> s_grid;
    LowerBudget budget{8, 8, 0.2};
};

/// ||upper||_p / ||f||_p and ||lower||_p / ||f||_p over `trials` Gaussian signals.
/// Throws HypothesisViolation unless 1 <= r < 2 and r < p < infinity.
OperatorNormSummary empirical_operator_norm(double r, double p, std::size_t n, std::size_t trials,
                                            std::uint64_t seed, const EmpiricalOptions& options = {});

/// Stream id of trial t at size n, shared by every consumer of the sweep draws.
std::uint64_t trial_stream(std::size_t n, std::size_t trial);

}  // namespace varmult
