#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace calab {

using Complex = std::complex<double>;

/// Tolerances shared by the residual checks and the root clustering.
///
/// A residual r at a point z is accepted when
///     r <= abs_tol + rel_tol * B,
/// where B is the magnitude bound of the polynomial at z (see
/// magnitude_bound). A cluster_radius of 0 means "automatic": the root
/// finder uses 1e-7 * (1 + max |root|).
struct ToleranceProfile {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double cluster_radius = 0.0;
    int root_iteration_cap = 500;

    void validate() const {
        if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol) ||
            !(rel_tol >= 0.0) || !std::isfinite(rel_tol) ||
            !(cluster_radius >= 0.0) || !std::isfinite(cluster_radius)) {
            throw std::invalid_argument("ToleranceProfile: fields must be finite and >= 0");
        }
        if (root_iteration_cap < 1) {
            throw std::invalid_argument("ToleranceProfile: root_iteration_cap must be >= 1");
        }
    }
};

inline double residual_threshold(const ToleranceProfile& tol, double bound) {
    return tol.abs_tol + tol.rel_tol * bound;
}

/// n! as a double. Exact for n <= 18.
inline double factorial_as_double(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// j! / (j-k)! as a double (falling factorial, k terms).
inline double falling_factorial(int j, int k) {
    double f = 1.0;
    for (int i = j - k + 1; i <= j; ++i) f *= i;
    return f;
}

/// Binomial coefficient C(n, k) as a double.
inline double binomial_as_double(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return std::round(b);
}

}  // namespace calab
