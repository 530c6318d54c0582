#ifndef TRANROOTS_TEST_SUPPORT_HPP
#define TRANROOTS_TEST_SUPPORT_HPP

#include <random>
#include <utility>
#include <vector>

#include "tranroots/recurrence.hpp"

namespace testing_support {

using tranroots::IntPoly;
using tranroots::IntSpec;

inline constexpr std::uint64_t kSeed = 20240521;

inline IntPoly random_int_poly(std::mt19937_64& rng, int max_degree, long lo, long hi)
{
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> coef(lo, hi);
    const int d = deg(rng);
    std::vector<mpz_class> c;
    for (int i = 0; i <= d; ++i)
        c.emplace_back(coef(rng));
    return IntPoly(std::move(c));
}

// Nonzero polynomial of degree <= 3 with coefficients in [-9, 9].
inline IntPoly random_small_poly(std::mt19937_64& rng)
{
    for (;;) {
        IntPoly p = random_int_poly(rng, 3, -9, 9);
        if (!p.is_zero())
            return p;
    }
}

// All coprime (ell, k) with 1 <= ell < k <= k_max.
inline std::vector<std::pair<int, int>> coprime_pairs(int k_max)
{
    std::vector<std::pair<int, int>> out;
    for (int k = 2; k <= k_max; ++k)
        for (int ell = 1; ell < k; ++ell)
            if (tranroots::gcd(ell, k) == 1)
                out.emplace_back(ell, k);
    return out;
}

inline IntSpec random_spec(std::mt19937_64& rng, int k_max)
{
    const auto pairs = coprime_pairs(k_max);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    const auto [ell, k] = pairs[pick(rng)];
    return IntSpec::make(random_small_poly(rng), random_small_poly(rng), ell, k);
}

inline IntSpec random_spec_with(std::mt19937_64& rng, int ell, int k)
{
    return IntSpec::make(random_small_poly(rng), random_small_poly(rng), ell, k);
}

// Row n of Pascal's triangle built by repeated addition.
inline std::vector<mpz_class> pascal_row(int n)
{
    std::vector<mpz_class> row{1};
    for (int r = 1; r <= n; ++r) {
        std::vector<mpz_class> next(static_cast<std::size_t>(r) + 1);
        next[0] = 1;
        next[static_cast<std::size_t>(r)] = 1;
        for (int i = 1; i < r; ++i)
            next[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i - 1)] + row[static_cast<std::size_t>(i)];
        row = std::move(next);
    }
    return row;
}

inline IntPoly ints(std::initializer_list<long> c)
{
    std::vector<mpz_class> v;
    for (long x : c)
        v.emplace_back(x);
    return IntPoly(std::move(v));
}

}  // namespace testing_support

#endif  // TRANROOTS_TEST_SUPPORT_HPP
