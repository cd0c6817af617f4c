#pragma once

#include <algorithm>
#include <vector>

#include "calab/calab.hpp"

namespace calab::testing {

/// Random roots in the complex box of the given radius with a minimum
/// pairwise separation (rejection sampling).
inline std::vector<Complex> random_separated_roots(SplitMix64& rng, int count, double box,
                                                   double min_sep) {
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < count) {
        const Complex cand = rng.next_in_box(box);
        bool ok = true;
        for (const Complex& r : roots) {
            if (std::abs(cand - r) < min_sep) {
                ok = false;
                break;
            }
        }
        if (ok) roots.push_back(cand);
    }
    return roots;
}

/// Random monic polynomial with coefficients in the complex box.
inline Polynomial random_monic(SplitMix64& rng, int degree, double box) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j < degree; ++j) c[static_cast<std::size_t>(j)] = rng.next_in_box(box);
    c.back() = Complex(1.0);
    return Polynomial(std::move(c));
}

/// Random monic polynomial with small integer coefficients.
inline Polynomial random_integer_monic(SplitMix64& rng, int degree, int magnitude) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j < degree; ++j) {
        const double re = std::floor(rng.next_in(-magnitude, magnitude + 1));
        const double im = std::floor(rng.next_in(-magnitude, magnitude + 1));
        c[static_cast<std::size_t>(j)] = Complex(re, im);
    }
    c.back() = Complex(1.0);
    return Polynomial(std::move(c));
}

/// ||p - q||_inf / ||p||_inf.
inline double relative_inf_diff(const Polynomial& p, const Polynomial& q) {
    return max_coefficient_difference(p, q) / inf_norm(p);
}

inline std::vector<Complex> permuted(std::vector<Complex> v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
        std::swap(v[i - 1], v[j]);
    }
    return v;
}

}  // namespace calab::testing
