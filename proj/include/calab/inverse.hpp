#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "calab/birkhoff.hpp"
#include "calab/common.hpp"
#include "calab/polynomial.hpp"
#include "calab/roots.hpp"

namespace calab {

/// Admissible node values per derivative order for the inverse problem:
/// level k holds the roots of p^(k), the candidate values of alpha_{k+1}.
/// Level n-1 is linear and its single root is the root centroid.
struct NodeLevels {
    std::vector<RootSet> levels;        // index k: roots of p^(k)
    std::vector<Polynomial> derivatives;  // p^(k) for residual evaluation

    int degree() const { return static_cast<int>(levels.size()); }

    /// Product over levels of the level's total multiplicity: always n!.
    /// Saturates at the maximum representable value.
    unsigned long long raw_count() const {
        unsigned long long c = 1;
        for (const RootSet& l : levels) {
            const auto m = static_cast<unsigned long long>(l.total_multiplicity);
            if (m != 0 && c > ~0ULL / m) return ~0ULL;
            c *= m;
        }
        return c;
    }

    /// Product over levels of the number of distinct clusters.
    unsigned long long distinct_count() const {
        unsigned long long c = 1;
        for (const RootSet& l : levels) {
            const auto m = static_cast<unsigned long long>(l.clusters.size());
            if (m != 0 && c > ~0ULL / m) return ~0ULL;
            c *= m;
        }
        return c;
    }
};

inline NodeLevels node_levels(const Polynomial& p, const ToleranceProfile& tol = {}) {
    if (!p.is_monic()) throw std::invalid_argument("node_levels: polynomial must be monic");
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("node_levels: degree must be >= 1");
    NodeLevels out;
    out.levels.reserve(static_cast<std::size_t>(n));
    out.derivatives.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Polynomial dk = derivative(p, k);
        out.levels.push_back(roots_of(dk, tol));
        out.derivatives.push_back(dk);
    }
    return out;
}

/// One candidate node vector together with the per-order residuals
/// |p^(k)(alpha_{k+1})|.
struct NodeAssignment {
    NodeVector alpha;
    std::vector<double> residuals;
};

class EnumerationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned long long kDefaultEnumerationCap = 3628800ULL;  // 10!

/// Streams the Cartesian product of the level root sets (representatives
/// expanded by multiplicity, so the raw total is always n!) in lexicographic
/// order of level indices. Construction fails when the raw total exceeds the
/// cap; the stream never silently truncates.
class AssignmentEnumerator {
public:
    explicit AssignmentEnumerator(const NodeLevels& levels,
                                  unsigned long long cap = kDefaultEnumerationCap)
        : raw_total_(levels.raw_count()), distinct_total_(levels.distinct_count()) {
        if (raw_total_ > cap) {
            throw EnumerationCapExceeded(
                "assignment enumeration would yield " + std::to_string(raw_total_) +
                " assignments, above the cap of " + std::to_string(cap));
        }
        for (const RootSet& l : levels.levels) choices_.push_back(l.expanded());
        derivatives_ = levels.derivatives;
        odometer_.assign(choices_.size(), 0);
    }

    unsigned long long raw_total() const { return raw_total_; }
    unsigned long long distinct_total() const { return distinct_total_; }
    unsigned long long yielded() const { return yielded_; }

    std::optional<NodeAssignment> next() {
        if (done_) return std::nullopt;
        NodeAssignment a;
        a.alpha.reserve(choices_.size());
        a.residuals.reserve(choices_.size());
        for (std::size_t k = 0; k < choices_.size(); ++k) {
            const Complex node = choices_[k][odometer_[k]];
            a.alpha.push_back(node);
            a.residuals.push_back(std::abs(evaluate(derivatives_[k], node)));
        }
        ++yielded_;
        // Advance, last level fastest (level 0 most significant).
        for (std::size_t k = choices_.size(); k-- > 0;) {
            if (++odometer_[k] < choices_[k].size()) break;
            odometer_[k] = 0;
            if (k == 0) done_ = true;
        }
        return a;
    }

private:
    std::vector<std::vector<Complex>> choices_;
    std::vector<Polynomial> derivatives_;
    std::vector<std::size_t> odometer_;
    unsigned long long raw_total_ = 0;
    unsigned long long distinct_total_ = 0;
    unsigned long long yielded_ = 0;
    bool done_ = false;
};

/// True iff the assignment's nodes, as a multiset, equal the root multiset
/// of p: every node maps to a root cluster within the clustering radius and
/// the per-cluster counts match the multiplicities exactly.
inline bool assignment_matches_roots(const Polynomial& p, const NodeAssignment& a,
                                     const ToleranceProfile& tol = {}) {
    if (static_cast<int>(a.alpha.size()) != p.degree()) {
        throw std::invalid_argument("assignment_matches_roots: node count must equal degree");
    }
    const RootSet rs = roots_of(p, tol);
    std::vector<int> counts(rs.clusters.size(), 0);
    for (const Complex& node : a.alpha) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < rs.clusters.size(); ++j) {
            const double d = std::abs(node - rs.clusters[j].representative);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        if (!(best <= rs.radius_used)) return false;
        ++counts[best_j];
    }
    for (std::size_t j = 0; j < rs.clusters.size(); ++j) {
        if (counts[j] != rs.clusters[j].multiplicity) return false;
    }
    return true;
}

}  // namespace calab
