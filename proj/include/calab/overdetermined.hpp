#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "calab/birkhoff.hpp"
#include "calab/common.hpp"
#include "calab/least_squares.hpp"
#include "calab/polynomial.hpp"

namespace calab {

/// Outcome of the degenerate interpolation problem with 2n conditions
/// p(alpha_{k+1}) = p^(k)(alpha_{k+1}) = c_k on the n+1 coefficients of a
/// degree-n polynomial. The k = 0 pair coincides, so only 2n-1 equations
/// are distinct.
struct OverdeterminedReport {
    int degree = 0;
    int distinct_equation_count = 0;
    int rank = 0;
    double residual_norm = 0.0;
    double tolerance = 0.0;
    bool consistent = false;
    /// n+1 - rank: dimension of the solution family when consistent.
    int family_dimension = 0;
    /// Solved leading coefficient below threshold: the family's members are
    /// effectively of degree < n.
    bool degenerate_degree = false;
    /// Raw solved coefficients a_0..a_n (present iff consistent).
    std::optional<std::vector<Complex>> solution_coefficients;
    /// Same coefficients as a Polynomial, when representable.
    std::optional<Polynomial> solution;
};

inline OverdeterminedReport analyze_overdetermined(const NodeVector& alpha,
                                                   const std::vector<Complex>& values,
                                                   const ToleranceProfile& tol = {}) {
    validate_nodes(alpha);
    tol.validate();
    if (values.size() != alpha.size()) {
        throw std::invalid_argument("analyze_overdetermined: values length must equal node count");
    }
    const int n = static_cast<int>(alpha.size());
    const int rows = 2 * n - 1;
    const int cols = n + 1;

    ComplexMatrix a(rows, cols);
    std::vector<Complex> b(static_cast<std::size_t>(rows));
    // Evaluation conditions p(alpha_{k+1}) = c_k, k = 0..n-1.
    for (int k = 0; k < n; ++k) {
        Complex power(1.0);
        for (int j = 0; j <= n; ++j) {
            a.at(k, j) = power;
            power *= alpha[static_cast<std::size_t>(k)];
        }
        b[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(k)];
    }
    // Derivative conditions p^(k)(alpha_{k+1}) = c_k, k = 1..n-1 (the k = 0
    // condition duplicates the evaluation row and is dropped).
    for (int k = 1; k < n; ++k) {
        const int row = n + k - 1;
        Complex power(1.0);
        for (int j = k; j <= n; ++j) {
            a.at(row, j) = falling_factorial(j, k) * power;
            power *= alpha[static_cast<std::size_t>(k)];
        }
        b[static_cast<std::size_t>(row)] = values[static_cast<std::size_t>(k)];
    }

    const double rank_threshold = 1e-10 * a.max_abs();
    LeastSquaresResult ls = solve_least_squares(a, b, rank_threshold);

    double rhs_scale = 0.0;
    for (const Complex& v : b) rhs_scale = std::max(rhs_scale, std::abs(v));

    OverdeterminedReport rep;
    rep.degree = n;
    rep.distinct_equation_count = rows;
    rep.rank = ls.rank;
    rep.family_dimension = cols - ls.rank;
    rep.tolerance = tol.abs_tol + tol.rel_tol * std::max(1.0, rhs_scale);
    rep.residual_norm = ls.residual_norm;
    rep.consistent = ls.residual_norm <= rep.tolerance;

    if (rep.consistent) {
        std::vector<Complex> x = ls.solution;
        // A homogeneous consistent system yields the zero solution; report a
        // nonzero member of the family instead, scaled monic when possible.
        double xmax = 0.0;
        for (const Complex& t : x) xmax = std::max(xmax, std::abs(t));
        if (xmax <= 1e-13 * std::max(1.0, rhs_scale) && !ls.null_space.empty()) {
            std::vector<Complex> dir = ls.null_space.front();
            double dmax = 0.0;
            for (const Complex& t : dir) dmax = std::max(dmax, std::abs(t));
            const Complex lead = dir.back();
            const Complex scale = (std::abs(lead) > 1e-10 * dmax) ? lead : Complex(dmax);
            std::vector<Complex> shifted = x;
            for (std::size_t i = 0; i < x.size(); ++i) shifted[i] += dir[i] / scale;
            const double shifted_residual = detail::residual_norm_of(a, shifted, b);
            if (shifted_residual <= rep.tolerance) {
                x = std::move(shifted);
                rep.residual_norm = shifted_residual;
            }
        }
        rep.solution_coefficients = x;
        rep.degenerate_degree = std::abs(x.back()) <= 1e-10;

        std::vector<Complex> trimmed = x;
        while (!trimmed.empty() && std::abs(trimmed.back()) <= 1e-10) trimmed.pop_back();
        if (!trimmed.empty()) rep.solution = Polynomial(std::move(trimmed));
    }
    return rep;
}

}  // namespace calab
