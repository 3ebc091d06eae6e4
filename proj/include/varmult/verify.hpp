#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace varmult {

using VariationPowerFn = std::function<double(std::span<const double>, double)>;

struct VerifyOptions {
    std::uint64_t seed = 20261018;
    /// Implementation checked by the variation oracle property; defaults to variation_power.
    VariationPowerFn variation;
};

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyReport {
    std::vector<PropertyResult> results;
    bool pass = true;
    /// Name of the first failing property.
    std::optional<std::string> first_failure;
};

/// Runs the invariant suite of every module at desk scale with fixed seeds.
VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace varmult
