#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "varmult/maximal.hpp"

namespace varmult {

struct SweepConfig {
    std::vector<double> r_list = {1.5};
    std::vector<double> p_list = {2.0};
    /// Explicit (r, p) pairs; when empty the product r_list x p_list is swept.
    std::vector<std::pair<double, double>> pairs;
    std::vector<std::size_t> n_list = {64, 128, 256, 512};
    std::size_t trials = 50;
    std::uint64_t seed = 1;
    /// Empty selects default_s_grid(r, p) per pair.
    std::vector<double> s_grid;
    double tol = 1e-6;
    std::string output_dir = "sweep_out";
    /// Pairs expected to fail the theorem hypotheses.
    std::vector<std::pair<double, double>> expect_reject;
    LowerBudget budget{8, 8, 0.2};
    bool plot = true;

    std::vector<std::pair<double, double>> resolved_pairs() const;
};

/// Parses and validates; unflagged inadmissible (r, p) pairs raise HypothesisViolation.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& config);

/// FNV-1a over the canonical JSON dump without output_dir, as 16 hex digits.
std::string config_hash(const SweepConfig& config);

struct SweepOutput {
    std::string csv;
    std::string svg;
    std::vector<OperatorNormSummary> summaries;
    /// Flagged pairs that were nonetheless admissible.
    std::size_t unexpected_accepts = 0;
};

SweepOutput run_sweep(const SweepConfig& config);

}  // namespace varmult
