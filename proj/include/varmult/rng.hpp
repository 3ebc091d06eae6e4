#pragma once

#include <cstdint>

#include "varmult/grid.hpp"

namespace varmult {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Counter-based generator: the k-th draw of stream `stream` under `seed` is a
/// pure function of (seed, stream, k), so results do not depend on scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t at(std::uint64_t counter) const;
    std::uint64_t next() { return at(counter_++); }
    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Independent standard complex Gaussian coordinates.
GridFunction random_gaussian_signal(std::size_t n, std::uint64_t seed, std::uint64_t stream);

/// a * exp(2 pi i k x / N): a single Fourier mode at centered frequency k.
GridFunction single_mode(std::size_t n, std::ptrdiff_t k, Complex amplitude);

}  // namespace varmult
