#pragma once

#include <cstdint>

#include "calab/common.hpp"

namespace calab {

/// Minimal deterministic generator (splitmix64). Used instead of the
/// standard distributions so that seeded runs are bit-reproducible across
/// standard library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform over the square [-r, r) x [-r, r).
    Complex next_in_box(double r) {
        const double re = next_in(-r, r);
        const double im = next_in(-r, r);
        return {re, im};
    }

private:
    std::uint64_t state_;
};

/// Stream-indexed seed derivation, so independent substreams (one per
/// multistart) are reproducible regardless of evaluation order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next_u64();
}

}  // namespace calab
