#include <catch2/catch_amalgamated.hpp>

#include "calab/birkhoff.hpp"
#include "calab/inverse.hpp"
#include "helpers.hpp"

using namespace calab;

TEST_CASE("levels of (z-1)^2 (z+1)") {
    const Polynomial p = from_roots(std::vector<Complex>{{1, 0}, {1, 0}, {-1, 0}});
    const NodeLevels nl = node_levels(p);
    REQUIRE(nl.degree() == 3);

    REQUIRE(nl.levels[0].clusters.size() == 2);
    CHECK(nl.levels[0].clusters[0].multiplicity == 1);
    CHECK(std::abs(nl.levels[0].clusters[0].representative - Complex(-1, 0)) <= 1e-9);
    CHECK(nl.levels[0].clusters[1].multiplicity == 2);
    CHECK(std::abs(nl.levels[0].clusters[1].representative - Complex(1, 0)) <= 1e-8);

    // p' = (3z+1)(z-1)
    REQUIRE(nl.levels[1].clusters.size() == 2);
    CHECK(std::abs(nl.levels[1].clusters[0].representative - Complex(-1.0 / 3.0, 0)) <= 1e-9);
    CHECK(std::abs(nl.levels[1].clusters[1].representative - Complex(1, 0)) <= 1e-9);

    // p'' root = 1/3 = centroid
    REQUIRE(nl.levels[2].clusters.size() == 1);
    CHECK(std::abs(nl.levels[2].clusters[0].representative - Complex(1.0 / 3.0, 0)) <= 1e-12);
}

TEST_CASE("levels of (z-a)^n are all {a}") {
    const Complex a(-0.5, 1.5);
    const int n = 6;
    const Polynomial p = from_roots(std::vector<Complex>(static_cast<std::size_t>(n), a));
    const NodeLevels nl = node_levels(p);
    for (int k = 0; k < n; ++k) {
        REQUIRE(nl.levels[static_cast<std::size_t>(k)].clusters.size() == 1);
        CHECK(nl.levels[static_cast<std::size_t>(k)].clusters[0].multiplicity == n - k);
        CHECK(std::abs(nl.levels[static_cast<std::size_t>(k)].clusters[0].representative - a) <= 1e-7);
    }
    CHECK(nl.raw_count() == 720);
    CHECK(nl.distinct_count() == 1);
}

TEST_CASE("levels of z^2 - 2z - 3") {
    const Polynomial p(std::vector<Complex>{{-3, 0}, {-2, 0}, {1, 0}});
    const NodeLevels nl = node_levels(p);
    REQUIRE(nl.degree() == 2);
    CHECK(std::abs(nl.levels[0].clusters[0].representative - Complex(-1, 0)) <= 1e-10);
    CHECK(std::abs(nl.levels[0].clusters[1].representative - Complex(3, 0)) <= 1e-10);
    REQUIRE(nl.levels[1].clusters.size() == 1);
    CHECK(std::abs(nl.levels[1].clusters[0].representative - Complex(1, 0)) <= 1e-12);
}

TEST_CASE("last level is the centroid") {
    SplitMix64 rng(61);
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 10);
        const Polynomial p = calab::testing::random_monic(rng, n, 2.0);
        const NodeLevels nl = node_levels(p);
        const RootSet& last = nl.levels.back();
        REQUIRE(last.clusters.size() == 1);
        const Complex c = centroid(p);
        CHECK(std::abs(last.clusters[0].representative - c) <= 1e-10 * (1.0 + std::abs(c)));
    }
}

TEST_CASE("enumeration yields n! assignments in lexicographic order") {
    const Polynomial p = from_roots(std::vector<Complex>{{0, 0}, {2, 0}, {-1, 1}});
    const NodeLevels nl = node_levels(p);
    CHECK(nl.raw_count() == 6);
    AssignmentEnumerator en(nl);
    CHECK(en.raw_total() == 6);
    std::vector<NodeAssignment> all;
    while (auto a = en.next()) all.push_back(*a);
    REQUIRE(all.size() == 6);
    CHECK(en.yielded() == 6);
    // level 0 is the most significant digit
    CHECK(all[0].alpha[0] == all[1].alpha[0]);
    CHECK(all[0].alpha[1] != all[1].alpha[1]);
    const ToleranceProfile tol;
    for (const NodeAssignment& a : all) {
        for (std::size_t k = 0; k < a.alpha.size(); ++k) {
            const Polynomial dk = derivative(p, static_cast<int>(k));
            CHECK(a.residuals[k] <= residual_threshold(tol, magnitude_bound(dk, a.alpha[k])));
        }
    }
}

TEST_CASE("raw count 6, distinct count 4 for (z-1)^2 (z+1)") {
    const Polynomial p = from_roots(std::vector<Complex>{{1, 0}, {1, 0}, {-1, 0}});
    const NodeLevels nl = node_levels(p);
    CHECK(nl.raw_count() == 6);
    CHECK(nl.distinct_count() == 4);
    AssignmentEnumerator en(nl);
    unsigned long long count = 0;
    while (en.next()) ++count;
    CHECK(count == 6);
}

TEST_CASE("enumeration cap is an error, not a truncation") {
    const Polynomial p = from_roots(std::vector<Complex>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    const NodeLevels nl = node_levels(p);
    CHECK_THROWS_AS(AssignmentEnumerator(nl, 10), EnumerationCapExceeded);
    AssignmentEnumerator ok(nl, 24);
    CHECK(ok.raw_total() == 24);
}

TEST_CASE("assignment_matches_roots") {
    const Complex a(0.5, -0.5);
    const Polynomial pa = from_roots(std::vector<Complex>(4, a));
    NodeAssignment assign;
    assign.alpha = NodeVector(4, a);
    assign.residuals.assign(4, 0.0);
    CHECK(assignment_matches_roots(pa, assign));

    const Polynomial q(std::vector<Complex>{{-3, 0}, {-2, 0}, {1, 0}});
    for (const Complex first : {Complex(3, 0), Complex(-1, 0)}) {
        NodeAssignment bad;
        bad.alpha = NodeVector{first, Complex(1, 0)};  // 1 is not a root of q
        bad.residuals.assign(2, 0.0);
        CHECK_FALSE(assignment_matches_roots(q, bad));
    }

    const Polynomial zsq(std::vector<Complex>{{0, 0}, {0, 0}, {1, 0}});
    NodeAssignment zero;
    zero.alpha = NodeVector{{0, 0}, {0, 0}};
    zero.residuals.assign(2, 0.0);
    CHECK(assignment_matches_roots(zsq, zero));

    NodeAssignment wrong_len;
    wrong_len.alpha = NodeVector{{0, 0}};
    CHECK_THROWS_AS(assignment_matches_roots(zsq, wrong_len), std::invalid_argument);
}

TEST_CASE("permutation invariance of the inverse problem") {
    SplitMix64 rng(62);
    for (int n = 3; n <= 6; ++n) {
        const auto roots = calab::testing::random_separated_roots(rng, n, 2.0, 0.05);
        const Polynomial p = from_roots(roots);
        const NodeLevels nl = node_levels(p);
        for (int t = 0; t < 25; ++t) {
            const auto perm = calab::testing::permuted(roots, rng);
            const Polynomial q = from_roots(perm);
            CHECK(max_coefficient_difference(p, q) <= 1e-12 * (1.0 + inf_norm(p)));
            const NodeLevels nlq = node_levels(q);
            for (int k = 0; k < n; ++k) {
                CHECK(multiset_match(nl.levels[static_cast<std::size_t>(k)],
                                     nlq.levels[static_cast<std::size_t>(k)],
                                     nl.levels[static_cast<std::size_t>(k)].radius_used));
            }
        }
    }
}

TEST_CASE("every assignment reproduces p through the forward solver") {
    SplitMix64 rng(63);
    for (int n = 2; n <= 5; ++n) {
        const auto roots = calab::testing::random_separated_roots(rng, n, 2.0, 0.1);
        const Polynomial p = from_roots(roots);
        AssignmentEnumerator en(node_levels(p));
        while (auto a = en.next()) {
            const Polynomial back = solve_forward(a->alpha);
            CHECK(calab::testing::relative_inf_diff(p, back) <= 1e-8);
        }
    }
}
