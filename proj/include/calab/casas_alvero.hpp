#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "calab/common.hpp"
#include "calab/polynomial.hpp"
#include "calab/random.hpp"
#include "calab/roots.hpp"

namespace calab {

struct CAOrderRecord {
    int order = 0;            // derivative order k, 1..n-1
    Complex best_root;        // root of p minimizing the scaled residual
    double residual = 0.0;    // |p^(k)(best_root)|
    double scaled_residual = 0.0;  // residual / B(p^(k), best_root)
    bool passes = false;
};

/// Verdict on the common-root condition: for each order k the checker
/// minimizes |p^(k)(z)| over the roots z of p. Only roots of p count; a
/// common root of two derivatives that p itself does not vanish at is
/// irrelevant to the condition. When every order passes, `witness` carries
/// nodes (z_1, ..., z_n) with p(z_k) = 0 and p^(k)(z_{k+1}) = 0.
struct CAReport {
    int degree = 0;
    std::vector<CAOrderRecord> per_order;
    bool verdict = false;
    std::optional<std::vector<Complex>> witness;
    RootSet roots;
};

inline CAReport ca_check(const Polynomial& p, const ToleranceProfile& tol = {}) {
    if (!p.is_monic()) throw std::invalid_argument("ca_check: polynomial must be monic");
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("ca_check: degree must be >= 1");
    tol.validate();

    CAReport rep;
    rep.degree = n;
    rep.roots = roots_of(p, tol);
    const double raw_cap = tol.abs_tol * factorial_as_double(n);

    bool all_pass = true;
    std::vector<Complex> witness{rep.roots.clusters.front().representative};
    for (int k = 1; k < n; ++k) {
        const Polynomial dk = derivative(p, k);
        CAOrderRecord rec;
        rec.order = k;
        bool have = false;
        for (const RootCluster& cl : rep.roots.clusters) {
            const double raw = std::abs(evaluate(dk, cl.representative));
            const double bound = magnitude_bound(dk, cl.representative);
            // B vanishes only at z = 0 with zero constant term, where raw
            // vanishes too; the raw cap is the meaningful test there.
            const double scaled = (bound == 0.0) ? 0.0 : raw / bound;
            const bool passes = scaled <= tol.rel_tol || raw <= raw_cap;
            const bool better = !have ||
                                (passes && !rec.passes) ||
                                (passes == rec.passes &&
                                 (scaled < rec.scaled_residual ||
                                  (scaled == rec.scaled_residual && raw < rec.residual)));
            if (better) {
                rec.best_root = cl.representative;
                rec.residual = raw;
                rec.scaled_residual = scaled;
                rec.passes = passes;
                have = true;
            }
        }
        all_pass = all_pass && rec.passes;
        witness.push_back(rec.best_root);
        rep.per_order.push_back(rec);
    }
    rep.verdict = all_pass;
    if (rep.verdict) rep.witness = std::move(witness);
    return rep;
}

/// Witness nodes of the interpolation reformulation, with each entry
/// re-verified to be a root of p; absent when the condition fails.
inline std::optional<std::vector<Complex>> theorem1_witness(const Polynomial& p,
                                                            const ToleranceProfile& tol = {}) {
    const CAReport rep = ca_check(p, tol);
    if (!rep.witness) return std::nullopt;
    for (const Complex& z : *rep.witness) {
        const double resid = std::abs(evaluate(p, z));
        if (resid > residual_threshold(tol, magnitude_bound(p, z))) return std::nullopt;
    }
    return rep.witness;
}

/// Scale-balanced defect of a root configuration: with p built from the
/// given roots, sum over k = 1..n-1 of min_i |p^(k)(z_i)|^2 / B(p^(k), z_i)^2.
/// Zero exactly when every derivative order shares a root with p; each term
/// is at most 1, so the defect is bounded by n-1.
inline double ca_defect(const std::vector<Complex>& roots) {
    if (roots.size() < 3) throw std::invalid_argument("ca_defect: need at least 3 roots");
    const Polynomial p = from_roots(roots);
    const int n = p.degree();
    double defect = 0.0;
    for (int k = 1; k < n; ++k) {
        const Polynomial dk = derivative(p, k);
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& z : roots) {
            const double raw = std::abs(evaluate(dk, z));
            if (raw == 0.0) {
                best = 0.0;
                break;
            }
            const double bound = magnitude_bound(dk, z);
            const double term = (raw * raw) / (bound * bound);
            best = std::min(best, term);
        }
        defect += best;
    }
    return defect;
}

struct SearchConfig {
    int degree = 3;
    int multistarts = 1;
    std::uint64_t seed = 0;
    double step_init = 0.25;
    double step_min = 1e-9;
    int max_iters = 400;
    double box_radius = 3.0;

    void validate() const {
        if (degree < 3) throw std::invalid_argument("SearchConfig: degree must be >= 3");
        if (multistarts < 1) throw std::invalid_argument("SearchConfig: multistarts must be >= 1");
        if (!(step_init > 0.0) || !(step_min > 0.0) || !(step_min < step_init)) {
            throw std::invalid_argument("SearchConfig: require 0 < step_min < step_init");
        }
        if (max_iters < 1) throw std::invalid_argument("SearchConfig: max_iters must be >= 1");
        if (!(box_radius > 0.0)) throw std::invalid_argument("SearchConfig: box_radius must be > 0");
    }
};

struct DescentResult {
    double defect = 0.0;
    std::vector<Complex> roots;  // full configuration (0, 1, free...)
    int sweeps = 0;
};

/// Coordinate-wise complex pattern search on the defect, with the first two
/// roots pinned to 0 and 1. Probes +/- step along the real and imaginary
/// axes of each free root, accepts strict improvements, halves the step
/// after a sweep with none, and stops at step_min or the sweep cap.
inline DescentResult pattern_descent(std::vector<Complex> free_roots, int degree,
                                     double step_init, double step_min, int max_iters) {
    if (static_cast<int>(free_roots.size()) != degree - 2) {
        throw std::invalid_argument("pattern_descent: expected degree - 2 free roots");
    }
    std::vector<Complex> conf(static_cast<std::size_t>(degree));
    conf[0] = Complex(0.0);
    conf[1] = Complex(1.0);
    for (std::size_t i = 0; i < free_roots.size(); ++i) conf[i + 2] = free_roots[i];

    DescentResult res;
    res.defect = ca_defect(conf);
    double step = step_init;
    const Complex dirs[4] = {Complex(1.0, 0.0), Complex(-1.0, 0.0), Complex(0.0, 1.0),
                             Complex(0.0, -1.0)};
    while (step >= step_min && res.sweeps < max_iters) {
        bool improved = false;
        for (std::size_t i = 2; i < conf.size(); ++i) {
            for (const Complex& d : dirs) {
                const Complex saved = conf[i];
                conf[i] = saved + step * d;
                const double cand = ca_defect(conf);
                if (cand < res.defect) {
                    res.defect = cand;
                    improved = true;
                } else {
                    conf[i] = saved;
                }
            }
        }
        if (!improved) step *= 0.5;
        ++res.sweeps;
    }
    res.roots = std::move(conf);
    return res;
}

struct SearchResult {
    double best_defect = std::numeric_limits<double>::infinity();
    std::vector<Complex> best_roots;
    int starts_run = 0;
    std::vector<double> per_start_defects;
    std::uint64_t seed = 0;
};

/// Multistart search for configurations of small defect. Starts are seeded
/// per-index substreams, so the per-start results do not depend on execution
/// order; the normalization (roots 0 and 1 pinned) excludes the single-root
/// family, which every configuration with two distinct roots can be mapped
/// onto by an affine change of variable.
inline SearchResult ca_search(const SearchConfig& cfg) {
    cfg.validate();
    SearchResult res;
    res.seed = cfg.seed;
    const int free_count = cfg.degree - 2;
    for (int s = 0; s < cfg.multistarts; ++s) {
        SplitMix64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(s)));
        std::vector<Complex> start(static_cast<std::size_t>(free_count));
        for (Complex& z : start) z = rng.next_in_box(cfg.box_radius);
        DescentResult d =
            pattern_descent(std::move(start), cfg.degree, cfg.step_init, cfg.step_min, cfg.max_iters);
        res.per_start_defects.push_back(d.defect);
        if (d.defect < res.best_defect) {
            res.best_defect = d.defect;
            res.best_roots = std::move(d.roots);
        }
        ++res.starts_run;
    }
    return res;
}

}  // namespace calab
