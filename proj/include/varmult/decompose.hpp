#pragma once

#include <cstddef>
#include <vector>

#include "varmult/grid.hpp"

namespace varmult {

/// Constants of the discrete stopping-time construction: level j holds at most
/// kCountConstant * 2^j pieces, each with |b| <= kCoefConstant * 2^(-j/r) * rho.
inline constexpr double kCountConstant = 4.0;
inline constexpr double kCoefConstant = 2.0;
/// Level offset used for the re-indexed comparison against the clean lemma constants.
inline constexpr int kLevelShift = 2;

struct StepApproximation {
    /// Array indices (0-based, increasing) where the greedy rule stopped; starts with 0.
    std::vector<std::size_t> stops;
    Multiplier step;
};

/// Greedy stopping times: t_0 = 0, t_{k+1} = least index with |m - m(t_k)| >= eps.
/// step holds m(t_k) on [t_k, t_{k+1}).
StepApproximation greedy_step_approx(const Multiplier& m, double eps);

struct LevelPiece {
    FreqInterval interval;
    double coeff = 0.0;
};

struct Decomposition {
    std::size_t size = 0;
    double r = 1.0;
    /// vr_norm(m, r) of the decomposed multiplier.
    double rho = 0.0;
    std::vector<std::vector<LevelPiece>> levels;
    /// m minus the sum of all levels.
    std::vector<double> residual;
    double residual_sup = 0.0;
};

/// Level j is the step function m_j - m_{j-1} (m_{-1} = 0) written as maximal
/// nonzero constant runs, where m_j = greedy_step_approx(m, 2^(-j/r) rho).
/// Stops at the first J with 2^(-J/r) rho <= tol. Rejects r < 1 and tol <= 0.
Decomposition decompose(const Multiplier& m, double r, double tol);

/// tol = 1e-6 * rho.
Decomposition decompose(const Multiplier& m, double r);

/// Sum of coeff * indicator over every level (residual excluded).
Multiplier reconstruct(const Decomposition& d, std::size_t n);

/// Running sum of levels 0..j for every j.
std::vector<Multiplier> partial_reconstructions(const Decomposition& d, std::size_t n);

struct LevelReport {
    std::size_t count = 0;
    double max_coeff = 0.0;
    double count_bound = 0.0;
    double coeff_bound = 0.0;
    bool pass = true;
    /// Clean lemma constants after shifting level indices by kLevelShift.
    bool shifted_pass = true;
};

struct LemmaReport {
    std::vector<LevelReport> levels;
    bool disjoint = true;
    /// Every level within kCountConstant / kCoefConstant bounds and intervals disjoint.
    bool pass = true;
    /// Informational: every level within 2^(j+shift) pieces and 2^((shift-j)/r) rho.
    bool shifted_pass = true;
};

LemmaReport verify_lemma_bounds(const Decomposition& d);

}  // namespace varmult
