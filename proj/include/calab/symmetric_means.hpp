#pragma once

#include <stdexcept>
#include <vector>

#include "calab/common.hpp"
#include "calab/polynomial.hpp"

namespace calab {

/// Coefficients of a monic polynomial in the alternating binomial basis:
/// p(z) = sum_k C(n,k) (-1)^k c_k z^{n-k}. c_k is the k-th elementary
/// symmetric function of the roots divided by C(n,k) — the "averaged"
/// symmetric product — so c_0 = 1 and c_1 is the root centroid.
struct SymmetricMeans {
    std::vector<Complex> c;
};

inline SymmetricMeans symmetric_means(const Polynomial& p) {
    if (!p.is_monic()) throw std::invalid_argument("symmetric_means: polynomial must be monic");
    const int n = p.degree();
    SymmetricMeans out;
    out.c.resize(static_cast<std::size_t>(n) + 1);
    out.c[0] = Complex(1.0);
    double sign = -1.0;
    for (int k = 1; k <= n; ++k) {
        out.c[static_cast<std::size_t>(k)] = sign * p.coefficient(n - k) / binomial_as_double(n, k);
        sign = -sign;
    }
    return out;
}

}  // namespace calab
