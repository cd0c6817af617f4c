#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "calab/common.hpp"

namespace calab {

/// Dense univariate polynomial over the complex numbers.
///
/// Coefficients are stored in ascending powers: coefficients()[j] is the
/// coefficient of z^j. Every constructor documents and enforces this order.
/// Exactly-zero leading entries are trimmed; the zero polynomial is not
/// representable and its construction throws.
class Polynomial {
public:
    explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
        if (coeffs_.empty()) {
            throw std::invalid_argument("Polynomial: all-zero coefficient sequence");
        }
        for (const Complex& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw std::invalid_argument("Polynomial: coefficients must be finite");
            }
        }
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<Complex>& coefficients() const { return coeffs_; }

    /// Coefficient of z^j; zero outside the stored range.
    Complex coefficient(int j) const {
        if (j < 0 || j > degree()) return Complex(0.0);
        return coeffs_[static_cast<std::size_t>(j)];
    }

    Complex leading() const { return coeffs_.back(); }

    /// Exact check: the leading coefficient is 1 bit-for-bit. Monic
    /// polynomials produced by this library set it exactly.
    bool is_monic() const { return coeffs_.back() == Complex(1.0); }

    bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

private:
    std::vector<Complex> coeffs_;
};

/// Evaluate p at z by nested multiplication.
inline Complex evaluate(const Polynomial& p, Complex z) {
    const auto& a = p.coefficients();
    Complex acc = a.back();
    for (auto it = a.rbegin() + 1; it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// Magnitude bound B(p, z) = sum_j |a_j| |z|^j. Dominates |p(z)| at every z
/// and scales residual checks so they stay meaningful for |z| >> 1.
inline double magnitude_bound(const Polynomial& p, Complex z) {
    const auto& a = p.coefficients();
    const double r = std::abs(z);
    double acc = std::abs(a.back());
    for (auto it = a.rbegin() + 1; it != a.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

/// k-th derivative. Applies the single-step rule k times, so coefficient j of
/// the result is a_{j+k} (j+k)!/j! and the degree drops by exactly k.
inline Polynomial derivative(const Polynomial& p, int k = 1) {
    if (k < 0) throw std::invalid_argument("derivative: order must be >= 0");
    if (k > p.degree()) throw std::invalid_argument("derivative order exceeds degree");
    std::vector<Complex> c = p.coefficients();
    for (int step = 0; step < k; ++step) {
        const int n = static_cast<int>(c.size()) - 1;
        for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(j - 1)] = c[static_cast<std::size_t>(j)] * static_cast<double>(j);
        c.pop_back();
    }
    return Polynomial(std::move(c));
}

/// Antiderivative Q of p with the integration constant fixed so Q(at) = 0.
inline Polynomial antiderivative_vanishing_at(const Polynomial& p, Complex at) {
    const auto& a = p.coefficients();
    std::vector<Complex> q(a.size() + 1, Complex(0.0));
    for (std::size_t j = 0; j < a.size(); ++j) q[j + 1] = a[j] / static_cast<double>(j + 1);
    Complex tail = q.back();
    for (std::size_t j = q.size() - 1; j >= 2; --j) tail = tail * at + q[j - 1];
    q[0] = -(tail * at);
    return Polynomial(std::move(q));
}

/// Monic polynomial prod_k (z - roots[k]), built by incremental
/// multiplication. The leading coefficient is exactly 1.
inline Polynomial from_roots(std::span<const Complex> roots) {
    if (roots.empty()) throw std::invalid_argument("from_roots: empty root sequence");
    std::vector<Complex> c{Complex(1.0)};
    c.reserve(roots.size() + 1);
    for (const Complex& r : roots) {
        c.push_back(Complex(0.0));
        for (std::size_t j = c.size() - 1; j >= 1; --j) c[j] = c[j - 1] - r * c[j];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
}

inline Polynomial from_roots(const std::vector<Complex>& roots) {
    return from_roots(std::span<const Complex>(roots));
}

/// Divide by the leading coefficient; the new leading entry is set to 1
/// exactly rather than left to rounding.
inline Polynomial monicized(const Polynomial& p) {
    std::vector<Complex> c = p.coefficients();
    const Complex lead = c.back();
    for (Complex& x : c) x /= lead;
    c.back() = Complex(1.0);
    return Polynomial(std::move(c));
}

/// Arithmetic mean of the roots of a monic polynomial, -a_{n-1}/n.
inline Complex centroid(const Polynomial& p) {
    if (!p.is_monic()) throw std::invalid_argument("centroid: polynomial must be monic");
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("centroid: degree must be >= 1");
    return -p.coefficient(n - 1) / static_cast<double>(n);
}

/// Coefficients of p(a z + b).
inline Polynomial compose_affine(const Polynomial& p, Complex a, Complex b) {
    const auto& c = p.coefficients();
    std::vector<Complex> res{c.back()};
    for (int j = p.degree() - 1; j >= 0; --j) {
        res.push_back(Complex(0.0));
        for (std::size_t t = res.size() - 1; t >= 1; --t) res[t] = res[t] * b + res[t - 1] * a;
        res[0] = res[0] * b + c[static_cast<std::size_t>(j)];
    }
    return Polynomial(std::move(res));
}

inline double inf_norm(const Polynomial& p) {
    double m = 0.0;
    for (const Complex& c : p.coefficients()) m = std::max(m, std::abs(c));
    return m;
}

/// max_j |p_j - q_j| over the union of coefficient ranges.
inline double max_coefficient_difference(const Polynomial& p, const Polynomial& q) {
    const int top = std::max(p.degree(), q.degree());
    double m = 0.0;
    for (int j = 0; j <= top; ++j) m = std::max(m, std::abs(p.coefficient(j) - q.coefficient(j)));
    return m;
}

}  // namespace calab
