#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "calab/common.hpp"

namespace calab {

/// Dense complex matrix, row-major.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

    Complex& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const Complex& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& x : data) m = std::max(m, std::abs(x));
        return m;
    }
};

struct LeastSquaresResult {
    std::vector<Complex> solution;               // one least-deviation solution
    double residual_norm = 0.0;                  // ||A x - b||_2 at that solution
    int rank = 0;
    std::vector<std::vector<Complex>> null_space;  // basis of the solution family
};

namespace detail {

/// Residual ||A x - b||_2 computed explicitly.
inline double residual_norm_of(const ComplexMatrix& a, const std::vector<Complex>& x,
                               const std::vector<Complex>& b) {
    double s = 0.0;
    for (int r = 0; r < a.rows; ++r) {
        Complex acc(0.0);
        for (int c = 0; c < a.cols; ++c) acc += a.at(r, c) * x[static_cast<std::size_t>(c)];
        s += std::norm(acc - b[static_cast<std::size_t>(r)]);
    }
    return std::sqrt(s);
}

}  // namespace detail

/// Least-deviation solve of A x ~= b by Householder orthogonal
/// triangularization with column pivoting. Rank is the count of diagonal
/// entries of R above rank_threshold (an absolute magnitude). The returned
/// solution is the basic one (free variables zero); null_space spans the
/// directions in which it may be shifted without changing the residual.
inline LeastSquaresResult solve_least_squares(ComplexMatrix a, std::vector<Complex> b,
                                              double rank_threshold) {
    const ComplexMatrix original = a;
    const std::vector<Complex> b0 = b;
    const int m = a.rows;
    const int nc = a.cols;
    if (static_cast<int>(b.size()) != m) {
        throw std::invalid_argument("solve_least_squares: rhs length mismatch");
    }

    std::vector<int> perm(static_cast<std::size_t>(nc));
    for (int j = 0; j < nc; ++j) perm[static_cast<std::size_t>(j)] = j;

    const int steps = std::min(m, nc);
    for (int k = 0; k < steps; ++k) {
        // Column pivot: largest remaining column norm.
        int pivot = k;
        double best = -1.0;
        for (int j = k; j < nc; ++j) {
            double s = 0.0;
            for (int r = k; r < m; ++r) s += std::norm(a.at(r, j));
            if (s > best) {
                best = s;
                pivot = j;
            }
        }
        if (pivot != k) {
            for (int r = 0; r < m; ++r) std::swap(a.at(r, k), a.at(r, pivot));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(pivot)]);
        }
        const double colnorm = std::sqrt(std::max(best, 0.0));
        if (colnorm == 0.0) break;

        // Householder reflector sending the column onto e_k.
        const Complex x0 = a.at(k, k);
        const double ax0 = std::abs(x0);
        const Complex phase = (ax0 == 0.0) ? Complex(1.0) : x0 / ax0;
        const Complex alpha = -phase * colnorm;
        std::vector<Complex> v(static_cast<std::size_t>(m - k));
        v[0] = x0 - alpha;
        for (int r = k + 1; r < m; ++r) v[static_cast<std::size_t>(r - k)] = a.at(r, k);
        double vnorm2 = 0.0;
        for (const Complex& t : v) vnorm2 += std::norm(t);
        if (vnorm2 > 0.0) {
            const double beta = 2.0 / vnorm2;
            for (int j = k; j < nc; ++j) {
                Complex dot(0.0);
                for (int r = k; r < m; ++r) {
                    dot += std::conj(v[static_cast<std::size_t>(r - k)]) * a.at(r, j);
                }
                dot *= beta;
                for (int r = k; r < m; ++r) a.at(r, j) -= v[static_cast<std::size_t>(r - k)] * dot;
            }
            Complex dot(0.0);
            for (int r = k; r < m; ++r) {
                dot += std::conj(v[static_cast<std::size_t>(r - k)]) * b[static_cast<std::size_t>(r)];
            }
            dot *= beta;
            for (int r = k; r < m; ++r) b[static_cast<std::size_t>(r)] -= v[static_cast<std::size_t>(r - k)] * dot;
        }
        a.at(k, k) = alpha;
        for (int r = k + 1; r < m; ++r) a.at(r, k) = Complex(0.0);
    }

    LeastSquaresResult res;
    for (int k = 0; k < steps; ++k) {
        if (std::abs(a.at(k, k)) > rank_threshold) {
            ++res.rank;
        } else {
            break;  // pivoting makes diagonal magnitudes non-increasing
        }
    }
    const int r = res.rank;

    auto back_substitute = [&](const std::vector<Complex>& rhs) {
        std::vector<Complex> w(static_cast<std::size_t>(r), Complex(0.0));
        for (int i = r - 1; i >= 0; --i) {
            Complex acc = rhs[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < r; ++j) acc -= a.at(i, j) * w[static_cast<std::size_t>(j)];
            w[static_cast<std::size_t>(i)] = acc / a.at(i, i);
        }
        return w;
    };

    std::vector<Complex> qtb(b.begin(), b.begin() + r);
    const std::vector<Complex> w = back_substitute(qtb);
    res.solution.assign(static_cast<std::size_t>(nc), Complex(0.0));
    for (int i = 0; i < r; ++i) res.solution[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = w[static_cast<std::size_t>(i)];
    res.residual_norm = detail::residual_norm_of(original, res.solution, b0);

    for (int f = r; f < nc; ++f) {
        std::vector<Complex> rhs(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) rhs[static_cast<std::size_t>(i)] = -a.at(i, f);
        const std::vector<Complex> u = back_substitute(rhs);
        std::vector<Complex> dir(static_cast<std::size_t>(nc), Complex(0.0));
        for (int i = 0; i < r; ++i) dir[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = u[static_cast<std::size_t>(i)];
        dir[static_cast<std::size_t>(perm[static_cast<std::size_t>(f)])] = Complex(1.0);
        res.null_space.push_back(std::move(dir));
    }
    return res;
}

}  // namespace calab
