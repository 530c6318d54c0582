#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tranroots/gpoly.hpp"
#include "tranroots/parse.hpp"
#include "tranroots/recurrence.hpp"

using namespace tranroots;
using testing_support::ints;

namespace {

const IntSpec& example_spec()
{
    static const IntSpec s = IntSpec::make(ints({1, 1, 0, 1}), ints({7, -2, 1}), 2, 3);
    return s;
}

const IntPoly& p21()
{
    static const IntPoly p = ints({393672761, -646754633, 667797557, 98239806, -1206661925, 2171467228,
                                   -2529964192, 2246607369, -1625784860, 969712412, -486724329, 201422869,
                                   -68243275, 17375116, -2717833, -196756, 295748, -114667, 27963, -4619, 492,
                                   -19});
    return p;
}

}  // namespace

TEST_SUITE("recurrence") {

TEST_CASE("P_21 of the running example")
{
    const auto seq = gen_recurrence(example_spec(), 21);
    REQUIRE(seq.size() == 22);
    CHECK(seq[21] == p21());
    CHECK(closed_form(example_spec(), 21) == p21());
    CHECK(recurrence_term(example_spec(), 21) == p21());
}

TEST_CASE("initial terms")
{
    const auto seq = gen_recurrence(example_spec(), 3);
    CHECK(seq[0] == ints({1}));
    CHECK(seq[1].is_zero());
    CHECK(seq[2] == -ints({7, -2, 1}));
    CHECK(closed_form(example_spec(), 1).is_zero());

    const IntSpec ones = IntSpec::make(ints({1}), ints({1}), 1, 2);
    CHECK(closed_form(ones, 2).is_zero());
    CHECK(gen_recurrence(ones, 2)[2].is_zero());
}

TEST_CASE("lattice solutions")
{
    const auto L = lattice_solutions(2, 3, 21);
    const std::vector<LatticePoint> expect{{0, 7}, {3, 5}, {6, 3}, {9, 1}};
    CHECK(L.solutions == expect);
    CHECK(lattice_solutions(2, 3, 1).empty());
    CHECK(lattice_solutions(2, 3, 0).solutions == std::vector<LatticePoint>{{0, 0}});
    CHECK_THROWS_AS(lattice_solutions(2, 4, 6), NotCoprime);
    CHECK_THROWS_AS(lattice_solutions(2, 3, -1), InvalidArgument);
}

TEST_CASE("spec validation and reduction")
{
    CHECK_THROWS_AS(IntSpec::make(ints({1}), ints({1}), 3, 3), InvalidArgument);
    CHECK_THROWS_AS(IntSpec::make(ints({1}), ints({1}), 0, 3), InvalidArgument);
    CHECK_THROWS_AS(IntSpec::make(IntPoly{}, IntPoly{}, 1, 2), InvalidArgument);
    CHECK_THROWS_AS(reduce_spec(ints({1}), ints({1}), 4, 4), InvalidArgument);
    CHECK_THROWS_AS(gen_recurrence(example_spec(), -1), InvalidArgument);

    const IntSpec bad = IntSpec::make(ints({1, 1}), ints({2}), 2, 4);
    CHECK_FALSE(bad.coprime());
    CHECK_THROWS_AS(closed_form(bad, 4), NotCoprime);

    auto r = reduce_spec(ints({1, 1}), ints({2}), 2, 3);
    CHECK(r.dilation == 1);
    CHECK(r.spec.ell == 2);
    r = reduce_spec(ints({1, 1}), ints({2}), 2, 4);
    CHECK(r.dilation == 2);
    CHECK(r.spec.ell == 1);
    CHECK(r.spec.k == 2);
    r = reduce_spec(ints({1, 1}), ints({2}), 4, 6);
    CHECK(r.dilation == 2);
    CHECK(r.spec.ell == 2);
    CHECK(r.spec.k == 3);
}

TEST_CASE("binomials")
{
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(60, 30) == mpz_class("118264581564861424"));
}

TEST_CASE("recurrence and closed form agree on random specs")
{
    std::mt19937_64 rng(testing_support::kSeed + 10);
    for (int trial = 0; trial < 60; ++trial) {
        const IntSpec s = testing_support::random_spec(rng, 7);
        const auto seq = gen_recurrence(s, 40);
        for (int n = 0; n <= 40; ++n)
            REQUIRE(seq[static_cast<std::size_t>(n)] == closed_form(s, n));
    }
}

TEST_CASE("floating recurrence tracks the exact one")
{
    const ComplexSpec c = to_complex(example_spec());
    const ComplexPoly p = recurrence_term(c, 21);
    const ComplexPoly q = closed_form(c, 21);
    REQUIRE(p.degree() == 21);
    for (int i = 0; i <= 21; ++i) {
        const double exact = p21()[static_cast<std::size_t>(i)].get_d();
        CHECK(std::abs(p[static_cast<std::size_t>(i)] - exact) <= 1e-6 * std::abs(exact));
        CHECK(std::abs(q[static_cast<std::size_t>(i)] - exact) <= 1e-6 * std::abs(exact));
    }
}

TEST_CASE("gcd reduction dilates the index")
{
    std::mt19937_64 rng(testing_support::kSeed + 11);
    for (int d : {2, 3}) {
        for (const auto& [ell, k] : testing_support::coprime_pairs(4)) {
            const IntPoly A = testing_support::random_small_poly(rng);
            const IntPoly B = testing_support::random_small_poly(rng);
            const IntSpec original = IntSpec::make(A, B, d * ell, d * k);
            const auto reduced = reduce_spec(A, B, d * ell, d * k);
            REQUIRE(reduced.dilation == d);
            const auto big = gen_recurrence(original, 15 * d);
            const auto small = gen_recurrence(reduced.spec, 15);
            for (int m = 0; m <= 15 * d; ++m) {
                if (m % d == 0)
                    CHECK(big[static_cast<std::size_t>(m)] == small[static_cast<std::size_t>(m / d)]);
                else
                    CHECK(big[static_cast<std::size_t>(m)].is_zero());
            }
        }
    }
}

TEST_CASE("factorization through G")
{
    std::mt19937_64 rng(testing_support::kSeed + 12);
    for (int trial = 0; trial < 40; ++trial) {
        const IntSpec s = testing_support::random_spec(rng, 7);
        for (int n = 0; n <= 40; ++n) {
            const IntPoly P = recurrence_term(s, n);
            const auto L = lattice_solutions(s.ell, s.k, n);
            if (L.empty()) {
                CHECK(P.is_zero());
                continue;
            }
            // direct expansion of ±B^{i1} A^{j1} Σ_u c_u ((-1)^{k-ell} B^k)^{u-1} A^{-(u-1)ell}
            const int i1 = L.first().i, j1 = L.first().j;
            IntPoly sum;
            const GPoly g = g_poly(s.ell, s.k, n);
            for (std::size_t u = 0; u < L.size(); ++u) {
                const int step = static_cast<int>(u);
                IntPoly term = pow(s.B, static_cast<long>(step) * s.k) * pow(s.A, j1 - step * s.ell);
                term *= g.coeffs.coeff(step);
                if ((step * (s.k - s.ell)) % 2 != 0)
                    term = -term;
                sum += term;
            }
            IntPoly rebuilt = sum * pow(s.B, i1);
            if ((i1 + j1) % 2 != 0)
                rebuilt = -rebuilt;
            CHECK(rebuilt == P);
            CHECK(factorized_form(s, n) == P);
        }
    }
}

TEST_CASE("generating function annihilates the truncated series")
{
    std::mt19937_64 rng(testing_support::kSeed + 13);
    for (int trial = 0; trial < 40; ++trial) {
        const IntSpec s = testing_support::random_spec(rng, 7);
        const int N = 30;
        const auto P = gen_recurrence(s, N);
        // coefficient of t^m in (1 + B t^ell + A t^k) Σ P_n t^n
        for (int m = 1; m <= N; ++m) {
            IntPoly c = P[static_cast<std::size_t>(m)];
            if (m - s.ell >= 0)
                c += s.B * P[static_cast<std::size_t>(m - s.ell)];
            if (m - s.k >= 0)
                c += s.A * P[static_cast<std::size_t>(m - s.k)];
            CHECK(c.is_zero());
        }
    }
}

}
