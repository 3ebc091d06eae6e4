#include "varmult/rng.hpp"

#include <cmath>
#include <numbers>

namespace varmult {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed) ^ mix64(~stream)) {}

std::uint64_t CounterRng::at(std::uint64_t counter) const { return mix64(key_ + mix64(counter)); }

double CounterRng::uniform() {
    // 53 random bits, shifted off zero.
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex CounterRng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

GridFunction random_gaussian_signal(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    std::vector<Complex> values(n);
    for (auto& v : values) v = rng.complex_normal();
    return GridFunction(std::move(values));
}

GridFunction single_mode(std::size_t n, std::ptrdiff_t k, Complex amplitude) {
    if (k < min_freq(n) || k > max_freq(n)) throw InvalidArgument("single_mode: frequency out of range");
    std::vector<Complex> values(n);
    const auto nn = static_cast<std::ptrdiff_t>(n);
    for (std::size_t x = 0; x < n; ++x) {
        const auto phase = ((k * static_cast<std::ptrdiff_t>(x)) % nn + nn) % nn;
        values[x] = amplitude * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n));
    }
    return GridFunction(std::move(values));
}

}  // namespace varmult
