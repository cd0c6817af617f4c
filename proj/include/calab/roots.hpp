#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "calab/common.hpp"
#include "calab/polynomial.hpp"

namespace calab {

struct RootCluster {
    Complex representative;
    int multiplicity = 1;
};

/// All roots of a polynomial, grouped into multiplicity clusters. Clusters
/// are sorted by (re, im) of the representative; multiplicities sum to the
/// degree of the source polynomial.
struct RootSet {
    std::vector<RootCluster> clusters;
    int total_multiplicity = 0;
    double radius_used = 0.0;

    /// Representatives repeated by multiplicity, in cluster order.
    std::vector<Complex> expanded() const {
        std::vector<Complex> out;
        out.reserve(static_cast<std::size_t>(total_multiplicity));
        for (const auto& c : clusters) {
            for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.representative);
        }
        return out;
    }
};

class RootFindingError : public std::runtime_error {
public:
    RootFindingError(std::string msg, std::vector<Complex> iterates, double residual)
        : std::runtime_error(std::move(msg)),
          best_iterates(std::move(iterates)),
          max_residual(residual) {}

    std::vector<Complex> best_iterates;
    double max_residual = 0.0;
};

namespace detail {

constexpr double kMachineEps = 2.220446049250313e-16;

/// Threshold below which |p(z)| is indistinguishable from evaluation noise;
/// iterates whose residual reaches it cannot be improved in double precision.
inline double eval_noise_floor(int degree, double bound) {
    return 2.0 * (2.0 * degree + 1.0) * kMachineEps * bound;
}

inline bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

/// Ehrlich-Aberth simultaneous iteration. Returns the iterates; throws
/// RootFindingError when the sweep cap is reached before every iterate is
/// either correction-converged or residual-noise-bound.
inline std::vector<Complex> aberth_iterates(const Polynomial& p, int max_iterations) {
    const int n = p.degree();
    if (n == 1) return {-p.coefficient(0) / p.coefficient(1)};

    // Initial guesses on a circle of Cauchy-bound radius, rotated by a fixed
    // offset so they never start on a symmetry axis of the root set.
    double max_ratio = 0.0;
    const double lead = std::abs(p.leading());
    for (int j = 0; j < n; ++j) max_ratio = std::max(max_ratio, std::abs(p.coefficient(j)) / lead);
    const double radius = 1.0 + max_ratio;
    constexpr double kAngleOffset = 0.4;

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n + kAngleOffset;
        z[static_cast<std::size_t>(i)] = std::polar(radius, theta);
    }

    const Polynomial dp = derivative(p, 1);

    for (int sweep = 0; sweep < max_iterations; ++sweep) {
        bool all_settled = true;
        for (int i = 0; i < n; ++i) {
            Complex& zi = z[static_cast<std::size_t>(i)];
            const Complex pv = evaluate(p, zi);
            const double bound = magnitude_bound(p, zi);
            if (std::abs(pv) <= eval_noise_floor(n, bound)) continue;

            const Complex dv = evaluate(dp, zi);
            if (dv == Complex(0.0)) {
                // Critical point hit exactly; nudge off it.
                zi += Complex(1e-6 * (1.0 + std::abs(zi)), 0.0);
                all_settled = false;
                continue;
            }
            const Complex ratio = pv / dv;
            Complex repulsion(0.0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = zi - z[static_cast<std::size_t>(j)];
                if (d == Complex(0.0)) d = Complex(1e-30, 0.0);
                repulsion += Complex(1.0) / d;
            }
            const Complex denom = Complex(1.0) - ratio * repulsion;
            const Complex correction = (denom == Complex(0.0)) ? ratio : ratio / denom;
            zi -= correction;
            if (std::abs(correction) > 1e-14 * (1.0 + std::abs(zi))) all_settled = false;
        }
        if (all_settled) return z;
    }

    double worst = 0.0;
    for (const Complex& zi : z) worst = std::max(worst, std::abs(evaluate(p, zi)));
    throw RootFindingError("roots_of: no convergence after iteration cap", z, worst);
}

struct IterateCluster {
    std::vector<int> members;
    Complex mean;
};

inline Complex cluster_mean(const std::vector<Complex>& z, const std::vector<int>& members) {
    Complex s(0.0);
    for (int m : members) s += z[static_cast<std::size_t>(m)];
    return s / static_cast<double>(members.size());
}

/// Product over iterates outside `inside` of |c - z_k|; the local scale of
/// the deflated polynomial at c.
inline double outside_product(const std::vector<Complex>& z, const std::vector<char>& inside, Complex c) {
    double g = 1.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (inside[k]) continue;
        g *= std::abs(c - z[k]);
    }
    return std::max(g, 1e-300);
}

}  // namespace detail

/// Compute all degree(p) roots with multiplicity clustering.
///
/// Ehrlich-Aberth iterates are merged by single linkage: always within
/// cluster_radius, and additionally when the combined cluster is consistent
/// with a single m-fold root at its mean, i.e. |p(mean)| sits at the
/// evaluation noise floor and the member spread is within the noise-implied
/// distance (noise/g)^(1/m). Representatives of multiple clusters are then
/// polished by Newton steps on p^(m-1), which has a simple root there.
inline RootSet roots_of(const Polynomial& p, const ToleranceProfile& tol = {}) {
    tol.validate();
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("roots_of: degree must be >= 1");

    std::vector<Complex> z = detail::aberth_iterates(p, tol.root_iteration_cap);
    std::sort(z.begin(), z.end(), detail::complex_less);

    double max_mag = 0.0;
    for (const Complex& zi : z) max_mag = std::max(max_mag, std::abs(zi));
    const double radius = (tol.cluster_radius > 0.0) ? tol.cluster_radius
                                                     : 1e-7 * (1.0 + max_mag);

    std::vector<detail::IterateCluster> clusters;
    for (int i = 0; i < n; ++i) clusters.push_back({{i}, z[static_cast<std::size_t>(i)]});

    auto should_merge = [&](const detail::IterateCluster& a, const detail::IterateCluster& b) {
        const double d = std::abs(a.mean - b.mean);
        if (d <= radius) return true;
        std::vector<int> joint = a.members;
        joint.insert(joint.end(), b.members.begin(), b.members.end());
        const Complex c = detail::cluster_mean(z, joint);
        const double pc = std::abs(evaluate(p, c));
        const double noise = 4.0 * detail::eval_noise_floor(n, magnitude_bound(p, c));
        if (pc > noise) return false;
        std::vector<char> inside(z.size(), 0);
        for (int m : joint) inside[static_cast<std::size_t>(m)] = 1;
        const double g = detail::outside_product(z, inside, c);
        const double m = static_cast<double>(joint.size());
        const double merge_radius = 4.0 * std::pow(noise / g, 1.0 / m);
        return d <= merge_radius;
    };

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                if (!should_merge(clusters[i], clusters[j])) continue;
                clusters[i].members.insert(clusters[i].members.end(),
                                           clusters[j].members.begin(),
                                           clusters[j].members.end());
                clusters[i].mean = detail::cluster_mean(z, clusters[i].members);
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
        }
    }

    RootSet out;
    out.radius_used = radius;
    for (const auto& cl : clusters) {
        Complex rep = cl.mean;
        const int mult = static_cast<int>(cl.members.size());
        if (mult >= 2) {
            // An m-fold root of p is a simple root of p^(m-1); a few Newton
            // steps there recover it to near machine precision.
            const Polynomial q = derivative(p, mult - 1);
            const Polynomial dq = derivative(q, 1);
            Complex w = rep;
            for (int it = 0; it < 40; ++it) {
                const Complex qv = evaluate(q, w);
                const Complex dv = evaluate(dq, w);
                if (dv == Complex(0.0)) break;
                const Complex step = qv / dv;
                w -= step;
                if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
            }
            double diam = 0.0;
            for (int a : cl.members) {
                diam = std::max(diam, std::abs(z[static_cast<std::size_t>(a)] - cl.mean));
            }
            const bool close_enough = std::abs(w - cl.mean) <= std::max(radius, 4.0 * diam);
            const bool residual_ok =
                std::abs(evaluate(p, w)) <=
                std::max(std::abs(evaluate(p, cl.mean)),
                         detail::eval_noise_floor(n, magnitude_bound(p, w)));
            if (close_enough && residual_ok) rep = w;
        }
        out.clusters.push_back({rep, mult});
        out.total_multiplicity += mult;
    }
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const RootCluster& a, const RootCluster& b) {
                  return detail::complex_less(a.representative, b.representative);
              });

    for (const auto& cl : out.clusters) {
        const double resid = std::abs(evaluate(p, cl.representative));
        const double bound = magnitude_bound(p, cl.representative);
        if (resid > residual_threshold(tol, bound)) {
            throw RootFindingError("roots_of: representative residual exceeds tolerance", z, resid);
        }
    }
    return out;
}

/// Multiset comparison of two root sets: clusters must pair up one-to-one
/// with equal multiplicities and representatives within `radius`.
inline bool multiset_match(const RootSet& a, const RootSet& b, double radius) {
    if (a.total_multiplicity != b.total_multiplicity) return false;
    if (a.clusters.size() != b.clusters.size()) return false;
    std::vector<char> used(b.clusters.size(), 0);
    for (const auto& ca : a.clusters) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < b.clusters.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(ca.representative - b.clusters[j].representative);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        if (!(best <= radius)) return false;
        if (b.clusters[best_j].multiplicity != ca.multiplicity) return false;
        used[best_j] = 1;
    }
    return true;
}

}  // namespace calab
