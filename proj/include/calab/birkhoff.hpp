#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "calab/common.hpp"
#include "calab/polynomial.hpp"

namespace calab {

/// Interpolation nodes (alpha_1, ..., alpha_n): the condition of derivative
/// order k is imposed at alpha_{k+1}.
using NodeVector = std::vector<Complex>;

inline void validate_nodes(const NodeVector& alpha) {
    if (alpha.empty()) throw std::invalid_argument("node vector must be nonempty");
    for (const Complex& a : alpha) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("node vector entries must be finite");
        }
    }
}

/// The (n+1) x (n+1) linear system for the lacunary interpolation problem
/// p^(k)(alpha_{k+1}) = 0, k = 0..n-1, on the coefficients a_0..a_n of a
/// monic degree-n polynomial. Row k holds j!/(j-k)! alpha_{k+1}^{j-k} in
/// column j >= k; row n is (0, ..., 0, n!) and pins the leading coefficient.
/// Upper triangular with diagonal (0!, 1!, ..., n!), hence nonsingular.
struct BirkhoffSystem {
    int n = 0;
    std::vector<Complex> matrix;  // (n+1)^2, row-major
    std::vector<Complex> rhs;     // length n+1

    Complex at(int row, int col) const {
        return matrix[static_cast<std::size_t>(row) * static_cast<std::size_t>(n + 1) +
                      static_cast<std::size_t>(col)];
    }
};

inline BirkhoffSystem build_system(const NodeVector& alpha) {
    validate_nodes(alpha);
    const int n = static_cast<int>(alpha.size());
    BirkhoffSystem sys;
    sys.n = n;
    sys.matrix.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1),
                      Complex(0.0));
    sys.rhs.assign(static_cast<std::size_t>(n) + 1, Complex(0.0));
    auto entry = [&](int row, int col) -> Complex& {
        return sys.matrix[static_cast<std::size_t>(row) * static_cast<std::size_t>(n + 1) +
                          static_cast<std::size_t>(col)];
    };
    for (int k = 0; k < n; ++k) {
        const Complex a = alpha[static_cast<std::size_t>(k)];
        Complex power(1.0);
        for (int j = k; j <= n; ++j) {
            entry(k, j) = falling_factorial(j, k) * power;
            power *= a;
        }
    }
    entry(n, n) = factorial_as_double(n);
    sys.rhs.back() = factorial_as_double(n);
    return sys;
}

/// Unique monic degree-n solution of p^(k)(alpha_{k+1}) = 0, k = 0..n-1,
/// by back substitution from the bottom row upward.
inline Polynomial solve_forward(const NodeVector& alpha) {
    const BirkhoffSystem sys = build_system(alpha);
    const int n = sys.n;
    std::vector<Complex> a(static_cast<std::size_t>(n) + 1, Complex(0.0));
    a.back() = Complex(1.0);  // rhs_n / n!
    for (int k = n - 1; k >= 0; --k) {
        Complex acc(0.0);
        for (int j = k + 1; j <= n; ++j) acc += sys.at(k, j) * a[static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(k)] = -acc / factorial_as_double(k);
    }
    return Polynomial(std::move(a));
}

/// The same polynomial via its iterated-integral representation
/// n! int_{alpha_1}^z int_{alpha_2}^{x_1} ... int_{alpha_n}^{x_{n-1}} 1.
/// Starting from the constant 1, each antiderivative constant is fixed by
/// forcing a zero at the corresponding node, innermost (alpha_n) first.
inline Polynomial iterated_integral(const NodeVector& alpha) {
    validate_nodes(alpha);
    const int n = static_cast<int>(alpha.size());
    Polynomial acc(std::vector<Complex>{Complex(1.0)});
    for (int k = n; k >= 1; --k) {
        acc = antiderivative_vanishing_at(acc, alpha[static_cast<std::size_t>(k - 1)]);
    }
    std::vector<Complex> c = acc.coefficients();
    const double scale = factorial_as_double(n);
    for (Complex& x : c) x *= scale;
    // The leading entry is n! * (1/n!) up to rounding; make monic exact.
    c.back() = Complex(1.0);
    return Polynomial(std::move(c));
}

}  // namespace calab
