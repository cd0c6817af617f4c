#include <catch2/catch_amalgamated.hpp>

#include "calab/overdetermined.hpp"
#include "calab/roots.hpp"
#include "helpers.hpp"

using namespace calab;

namespace {

// Independent least-squares oracle via the normal equations A^H A x = A^H b
// solved by Gaussian elimination with partial pivoting. Deliberately a
// different route from the QR in the library.
double normal_equations_residual(const ComplexMatrix& a, const std::vector<Complex>& b) {
    const int m = a.rows, nc = a.cols;
    std::vector<std::vector<Complex>> g(static_cast<std::size_t>(nc),
                                        std::vector<Complex>(static_cast<std::size_t>(nc), Complex(0.0)));
    std::vector<Complex> rhs(static_cast<std::size_t>(nc), Complex(0.0));
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            Complex s(0.0);
            for (int r = 0; r < m; ++r) s += std::conj(a.at(r, i)) * a.at(r, j);
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
        Complex s(0.0);
        for (int r = 0; r < m; ++r) s += std::conj(a.at(r, i)) * b[static_cast<std::size_t>(r)];
        rhs[static_cast<std::size_t>(i)] = s;
    }
    // Elimination with partial pivoting; tiny pivots mean rank deficiency and
    // the corresponding variable is pinned to zero.
    std::vector<int> order(static_cast<std::size_t>(nc));
    for (int i = 0; i < nc; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int k = 0; k < nc; ++k) {
        int piv = k;
        for (int r = k + 1; r < nc; ++r) {
            if (std::abs(g[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]) >
                std::abs(g[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)])) {
                piv = r;
            }
        }
        std::swap(g[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(piv)]);
        std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
        const Complex pivot = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        if (std::abs(pivot) < 1e-12) continue;
        for (int r = k + 1; r < nc; ++r) {
            const Complex f = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] / pivot;
            for (int c = k; c < nc; ++c) {
                g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * g[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
            }
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(k)];
        }
    }
    std::vector<Complex> x(static_cast<std::size_t>(nc), Complex(0.0));
    for (int k = nc - 1; k >= 0; --k) {
        const Complex pivot = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        if (std::abs(pivot) < 1e-12) {
            x[static_cast<std::size_t>(k)] = Complex(0.0);
            continue;
        }
        Complex acc = rhs[static_cast<std::size_t>(k)];
        for (int c = k + 1; c < nc; ++c) {
            acc -= g[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        }
        x[static_cast<std::size_t>(k)] = acc / pivot;
    }
    double s = 0.0;
    for (int r = 0; r < m; ++r) {
        Complex acc(0.0);
        for (int c = 0; c < nc; ++c) acc += a.at(r, c) * x[static_cast<std::size_t>(c)];
        s += std::norm(acc - b[static_cast<std::size_t>(r)]);
    }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("least squares agrees with the normal-equations oracle") {
    SplitMix64 rng(51);
    for (int t = 0; t < 40; ++t) {
        const int m = 3 + static_cast<int>(rng.next_u64() % 6);
        const int nc = 2 + static_cast<int>(rng.next_u64() % static_cast<unsigned>(m - 1));
        ComplexMatrix a(m, nc);
        std::vector<Complex> b(static_cast<std::size_t>(m));
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < nc; ++c) a.at(r, c) = rng.next_in_box(2.0);
            b[static_cast<std::size_t>(r)] = rng.next_in_box(2.0);
        }
        const LeastSquaresResult ls = solve_least_squares(a, b, 1e-10 * a.max_abs());
        const double oracle = normal_equations_residual(a, b);
        CHECK(ls.residual_norm <= oracle + 1e-8);
        CHECK(ls.residual_norm >= oracle - 1e-8);
    }
}

TEST_CASE("all conditions zero at a repeated node") {
    const Complex a(1.25, -0.75);
    const NodeVector alpha(4, a);
    const std::vector<Complex> values(4, Complex(0.0));
    const OverdeterminedReport rep = analyze_overdetermined(alpha, values);
    CHECK(rep.distinct_equation_count == 7);
    CHECK(rep.consistent);
    CHECK(rep.residual_norm <= 1e-10);
    CHECK(rep.family_dimension >= 1);
    REQUIRE(rep.solution.has_value());
    // The reported family member is (z-a)^4 up to scale.
    const Polynomial expect = from_roots(std::vector<Complex>(4, a));
    CHECK(calab::testing::relative_inf_diff(expect, monicized(*rep.solution)) <= 1e-8);
}

TEST_CASE("single node: one equation, two unknowns") {
    const OverdeterminedReport rep =
        analyze_overdetermined(NodeVector{{2, 1}}, std::vector<Complex>{{3, -4}});
    CHECK(rep.distinct_equation_count == 1);
    CHECK(rep.rank == 1);
    CHECK(rep.consistent);
    CHECK(rep.family_dimension == 1);
    REQUIRE(rep.solution_coefficients.has_value());
    const auto& x = *rep.solution_coefficients;
    CHECK(std::abs(x[0] + x[1] * Complex(2, 1) - Complex(3, -4)) <= 1e-10);
}

TEST_CASE("generic random degree-4 data is inconsistent") {
    SplitMix64 rng(52);
    for (int t = 0; t < 100; ++t) {
        NodeVector alpha;
        std::vector<Complex> values;
        for (int i = 0; i < 4; ++i) {
            alpha.push_back(rng.next_in_box(2.0));
            values.push_back(rng.next_in_box(2.0));
        }
        const OverdeterminedReport rep = analyze_overdetermined(alpha, values);
        CHECK(rep.distinct_equation_count == 7);
        CHECK_FALSE(rep.consistent);
        CHECK(rep.residual_norm > 1e-6);

        // Dual route: the independent solver sees the same irreducible misfit.
        ComplexMatrix a(7, 5);
        std::vector<Complex> b(7);
        for (int k = 0; k < 4; ++k) {
            Complex power(1.0);
            for (int j = 0; j <= 4; ++j) {
                a.at(k, j) = power;
                power *= alpha[static_cast<std::size_t>(k)];
            }
            b[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(k)];
        }
        for (int k = 1; k < 4; ++k) {
            Complex power(1.0);
            for (int j = k; j <= 4; ++j) {
                a.at(4 + k - 1, j) = falling_factorial(j, k) * power;
                power *= alpha[static_cast<std::size_t>(k)];
            }
            b[static_cast<std::size_t>(4 + k - 1)] = values[static_cast<std::size_t>(k)];
        }
        const double oracle = normal_equations_residual(a, b);
        CHECK(std::abs(oracle - rep.residual_norm) <= 1e-7 * (1.0 + oracle));
    }
}

TEST_CASE("data generated by an actual polynomial is consistent") {
    SplitMix64 rng(53);
    for (int t = 0; t < 25; ++t) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 3);
        const Polynomial q = calab::testing::random_monic(rng, n, 1.5);
        NodeVector alpha(static_cast<std::size_t>(n));
        std::vector<Complex> values(static_cast<std::size_t>(n));
        alpha[0] = rng.next_in_box(1.5);
        values[0] = evaluate(q, alpha[0]);
        bool feasible = true;
        for (int k = 1; k < n; ++k) {
            // Any root of q - q^(k) makes the paired conditions agree.
            std::vector<Complex> diff = q.coefficients();
            const Polynomial dq = derivative(q, k);
            for (int j = 0; j <= dq.degree(); ++j) diff[static_cast<std::size_t>(j)] -= dq.coefficient(j);
            const RootSet rs = roots_of(Polynomial(std::move(diff)));
            if (rs.clusters.empty()) {
                feasible = false;
                break;
            }
            alpha[static_cast<std::size_t>(k)] = rs.clusters.front().representative;
            values[static_cast<std::size_t>(k)] = evaluate(q, alpha[static_cast<std::size_t>(k)]);
        }
        if (!feasible) continue;
        const OverdeterminedReport rep = analyze_overdetermined(alpha, values);
        CHECK(rep.consistent);
        CHECK(rep.residual_norm <= rep.tolerance);
    }
}

TEST_CASE("length mismatch is rejected") {
    CHECK_THROWS_AS(analyze_overdetermined(NodeVector{{1, 0}, {2, 0}}, std::vector<Complex>{{1, 0}}),
                    std::invalid_argument);
}
