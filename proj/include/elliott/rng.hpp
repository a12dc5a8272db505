#pragma once

#include <cstdint>
#include <random>

namespace elliott {

// Seeded generator with platform-stable derivations (std::mt19937_64 output
// is specified by the standard; the distributions here avoid libstdc++'s
// unspecified ones).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1) with 53 bits.
    double unit() { return double(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

private:
    std::mt19937_64 eng_;
};

} // namespace elliott
