// Deterministic random sampling helpers. mt19937_64 output is fixed by the
// standard, and doubles are derived from raw bits; identical seeds therefore
// give byte-identical sample streams on every platform.
#pragma once

#include <cstdint>
#include <random>

namespace spherelab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) without distribution-object portability
    // caveats (bound must be positive).
    std::uint64_t below(std::uint64_t bound) {
        // Multiply-shift rejection-free mapping; bias < 2^-64 * bound is
        // irrelevant for sampling experiment points.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(eng_()) * bound) >> 64);
    }

    bool coin() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace spherelab
