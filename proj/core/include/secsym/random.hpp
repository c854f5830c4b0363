#pragma once

#include "secsym/types.hpp"

#include <cstdint>
#include <random>

namespace secsym {

/// Deterministic random source. The raw stream is std::mt19937_64 (sequence
/// fixed by the standard) and all mappings to doubles are hand-rolled, so a
/// given seed produces the same values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// standard normal via Box-Muller
    double gaussian();

    /// integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi);

    std::uint64_t raw() { return eng_(); }

    Vec uniform_vec(Index n, double a, double b);
    Vec gaussian_vec(Index n);

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace secsym
