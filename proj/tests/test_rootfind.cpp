#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "tranroots/rootfind.hpp"

using namespace tranroots;
using testing_support::ints;

namespace {

std::vector<cplx> sorted_values(const RootSet& rs)
{
    std::vector<cplx> v;
    for (const auto& r : rs.roots)
        for (int m = 0; m < r.multiplicity; ++m)
            v.push_back(r.value);
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

ComplexPoly random_poly(std::mt19937_64& rng, int degree)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c)
        x = cplx(u(rng), u(rng));
    if (std::abs(c.back()) < 0.1)
        c.back() = 1.0;
    return ComplexPoly(c);
}

}  // namespace

TEST_SUITE("rootfind") {

TEST_CASE("simple roots")
{
    RootSet rs = find_roots(ComplexPoly{1.0, 0.0, 1.0});
    CHECK(rs.converged);
    auto v = sorted_values(rs);
    REQUIRE(v.size() == 2);
    CHECK(std::abs(v[0] - cplx(0, -1)) < 1e-12);
    CHECK(std::abs(v[1] - cplx(0, 1)) < 1e-12);
    for (const auto& r : rs.roots)
        CHECK(r.residual < 1e-12);

    rs = find_roots(ComplexPoly{-6.0, 11.0, -6.0, 1.0});
    v = sorted_values(rs);
    REQUIRE(v.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(v[static_cast<std::size_t>(i)] - cplx(i + 1)) < 1e-10);
}

TEST_CASE("zero roots are deflated")
{
    const RootSet rs = find_roots(ComplexPoly{0.0, 0.0, 1.0});
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].value == cplx(0.0));
    CHECK(rs.roots[0].multiplicity == 2);
    CHECK(rs.count() == 2);

    const RootSet ex = find_roots(ints({0, 0, 0, 2}));
    REQUIRE(ex.roots.size() == 1);
    CHECK(ex.roots[0].multiplicity == 3);
}

TEST_CASE("degenerate input")
{
    CHECK_THROWS_AS(find_roots(ComplexPoly{5.0}), DegeneratePolynomial);
    CHECK_THROWS_AS(find_roots(ComplexPoly{}), DegeneratePolynomial);
    CHECK_THROWS_AS(find_roots(ints({3})), DegeneratePolynomial);
}

TEST_CASE("residual report")
{
    const ComplexPoly p{-1.0, 1.0};
    const std::vector<cplx> exact{1.0};
    CHECK(residual_report(p, exact)[0] == 0.0);
    const std::vector<cplx> off{1.0 + 1e-6};
    CHECK(residual_report(p, off)[0] == doctest::Approx(5e-7).epsilon(1e-3));
    const std::vector<cplx> i{cplx(0, 1)};
    CHECK(residual_report(ComplexPoly{1.0, 0.0, 1.0}, i)[0] < 1e-15);
}

TEST_CASE("exact coefficients with repeated roots")
{
    // (z-1)^3 (z+2)
    const IntPoly p = pow(ints({-1, 1}), 3) * ints({2, 1});
    const RootSet rs = find_roots(p);
    CHECK(rs.count() == 4);
    bool found_triple = false;
    for (const auto& r : rs.roots)
        if (r.multiplicity == 3 && std::abs(r.value - cplx(1.0)) < 1e-9)
            found_triple = true;
    CHECK(found_triple);
    CHECK(rs.converged);
}

TEST_CASE("exact refinement of an ill-conditioned polynomial")
{
    // Wilkinson's product (z-1)...(z-20) is hopeless in plain doubles
    IntPoly w = ints({1});
    for (int r = 1; r <= 20; ++r)
        w *= ints({-r, 1});
    const RootSet rs = find_roots(w);
    CHECK(rs.converged);
    auto v = sorted_values(rs);
    REQUIRE(v.size() == 20);
    for (int r = 1; r <= 20; ++r)
        CHECK(std::abs(v[static_cast<std::size_t>(r - 1)] - cplx(r)) < 1e-12 * r);
}

TEST_CASE("Vieta relations")
{
    std::mt19937_64 rng(testing_support::kSeed + 20);
    for (int degree : {2, 5, 17, 40, 77, 100}) {
        const ComplexPoly p = random_poly(rng, degree);
        const RootSet rs = find_roots(p);
        REQUIRE(rs.converged);
        REQUIRE(rs.count() == degree);
        cplx sum = 0;
        double log_abs = 0;
        double arg = 0;
        for (const auto& r : rs.roots) {
            sum += static_cast<double>(r.multiplicity) * r.value;
            log_abs += r.multiplicity * std::log(std::abs(r.value));
            arg += r.multiplicity * std::arg(r.value);
        }
        const std::size_t d = static_cast<std::size_t>(degree);
        const cplx want_sum = -p[d - 1] / p[d];
        const cplx want_prod = (degree % 2 ? -1.0 : 1.0) * p[0] / p[d];
        CHECK(std::abs(sum - want_sum) <= 1e-6 * std::max(1.0, std::abs(want_sum)));
        const cplx prod = std::polar(std::exp(log_abs), arg);
        CHECK(std::abs(prod - want_prod) <= 1e-6 * std::abs(want_prod));
    }
}

TEST_CASE("roots of real polynomials come in conjugate pairs")
{
    std::mt19937_64 rng(testing_support::kSeed + 21);
    for (int trial = 0; trial < 40; ++trial) {
        const IntPoly p = testing_support::random_int_poly(rng, 30, -50, 50);
        if (p.degree() < 1)
            continue;
        const RootSet rs = find_roots(to_complex(p).poly);
        const auto v = sorted_values(rs);
        std::vector<bool> used(v.size(), false);
        for (std::size_t i = 0; i < v.size(); ++i) {
            double best = HUGE_VAL;
            for (std::size_t j = 0; j < v.size(); ++j)
                best = std::min(best, std::abs(std::conj(v[i]) - v[j]));
            CHECK(best <= 1e-8 * std::max(1.0, std::abs(v[i])));
        }
    }
}

TEST_CASE("roots respect the Cauchy bound")
{
    std::mt19937_64 rng(testing_support::kSeed + 22);
    ToleranceConfig cfg;
    for (int trial = 0; trial < 60; ++trial) {
        const ComplexPoly p = random_poly(rng, 1 + trial % 30);
        const double bound = cauchy_root_bound(p);
        for (const auto& r : find_roots(p, cfg).roots)
            CHECK(std::abs(r.value) <= bound + cfg.root_residual_tol);
    }
}

TEST_CASE("identical input gives identical output")
{
    std::mt19937_64 rng(testing_support::kSeed + 23);
    const ComplexPoly p = random_poly(rng, 60);
    const RootSet a = find_roots(p), b = find_roots(p);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
        CHECK(a.roots[i].value == b.roots[i].value);
        CHECK(a.roots[i].residual == b.roots[i].residual);
    }
    const IntPoly q = testing_support::random_int_poly(rng, 40, -9, 9);
    if (q.degree() >= 1) {
        const RootSet c = find_roots(q), d = find_roots(q);
        for (std::size_t i = 0; i < c.roots.size(); ++i)
            CHECK(c.roots[i].value == d.roots[i].value);
    }
}

}
