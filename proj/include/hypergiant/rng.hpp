#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hypergiant {

/// Mixes a seed and a list of stream indices into an independent 64-bit seed.
/// Used to give every replica, chunk and cell its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams);

/// Thin wrapper around mt19937_64. Draws are deterministic for a given seed on
/// a given build (Poisson draws go through the standard library).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform01_open_low() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::int64_t poisson(double mean);

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace hypergiant
