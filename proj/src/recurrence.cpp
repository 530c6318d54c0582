#include "tranroots/recurrence.hpp"

#include <deque>
#include <numeric>
#include <string>

namespace tranroots {

namespace {

template <class T>
T from_integer(const mpz_class& v);

template <>
mpz_class from_integer<mpz_class>(const mpz_class& v)
{
    return v;
}

template <>
cplx from_integer<cplx>(const mpz_class& v)
{
    return {v.get_d(), 0.0};
}

void require_coprime(int ell, int k)
{
    if (gcd(ell, k) != 1)
        throw NotCoprime("(ell, k) = (" + std::to_string(ell) + ", " + std::to_string(k)
                         + ") are not coprime; reduce the spec first");
}

// Inverse of a modulo m for gcd(a, m) = 1, via extended Euclid.
long mod_inverse(long a, long m)
{
    long r0 = m, r1 = ((a % m) + m) % m;
    long s0 = 0, s1 = 1;
    while (r1 != 0) {
        const long q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        s0 = std::exchange(s1, s0 - q * s1);
    }
    return ((s0 % m) + m) % m;
}

}  // namespace

template <class T>
RecurrenceSpec<T> RecurrenceSpec<T>::make(DensePoly<T> a, DensePoly<T> b, int ell, int k)
{
    if (ell < 1 || k <= ell)
        throw InvalidArgument("recurrence needs 1 <= ell < k, got ell=" + std::to_string(ell)
                              + ", k=" + std::to_string(k));
    if (a.is_zero() && b.is_zero())
        throw InvalidArgument("A and B cannot both be the zero polynomial");
    return RecurrenceSpec{std::move(a), std::move(b), ell, k};
}

template <class T>
bool RecurrenceSpec<T>::coprime() const noexcept
{
    return gcd(ell, k) == 1;
}

ComplexSpec to_complex(const IntSpec& spec)
{
    return ComplexSpec{to_complex(spec.A).poly, to_complex(spec.B).poly, spec.ell, spec.k};
}

int gcd(int a, int b) noexcept { return std::gcd(a, b); }

LatticeSolutionSet lattice_solutions(int ell, int k, int n)
{
    if (ell < 1 || k < 1)
        throw InvalidArgument("lattice_solutions needs positive ell and k");
    if (n < 0)
        throw InvalidArgument("lattice_solutions needs n >= 0");
    require_coprime(ell, k);

    LatticeSolutionSet out;
    out.n = n;
    // i ≡ n·ell^{-1} (mod k) pins the smallest admissible i.
    const long i0 = k == 1 ? 0 : (static_cast<long>(n % k) * mod_inverse(ell, k)) % k;
    for (long i = i0; i * ell <= n; i += k) {
        const long rest = n - i * ell;
        out.solutions.push_back({static_cast<int>(i), static_cast<int>(rest / k)});
    }
    return out;
}

mpz_class binomial(unsigned long n, unsigned long r)
{
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, r);
    return out;
}

template <class T>
ReducedSpec<T> reduce_spec(const DensePoly<T>& A, const DensePoly<T>& B, int ell, int k)
{
    if (ell < 1 || k <= ell)
        throw InvalidArgument("reduce_spec needs 1 <= ell < k, got ell=" + std::to_string(ell)
                              + ", k=" + std::to_string(k));
    const int d = gcd(ell, k);
    return {RecurrenceSpec<T>::make(A, B, ell / d, k / d), d};
}

template <class T>
std::vector<DensePoly<T>> gen_recurrence(const RecurrenceSpec<T>& spec, int n_max)
{
    if (n_max < 0)
        throw InvalidArgument("gen_recurrence needs n_max >= 0");
    std::vector<DensePoly<T>> P;
    P.reserve(static_cast<std::size_t>(n_max) + 1);
    P.push_back(DensePoly<T>::constant(T(1)));
    for (int n = 1; n <= n_max; ++n) {
        DensePoly<T> next;
        if (n >= spec.ell)
            next -= spec.B * P[static_cast<std::size_t>(n - spec.ell)];
        if (n >= spec.k)
            next -= spec.A * P[static_cast<std::size_t>(n - spec.k)];
        P.push_back(std::move(next));
    }
    return P;
}

template <class T>
DensePoly<T> recurrence_term(const RecurrenceSpec<T>& spec, int n)
{
    if (n < 0)
        throw InvalidArgument("recurrence_term needs n >= 0");
    // window.back() is P_m; window[size-1-r] is P_{m-r}
    std::deque<DensePoly<T>> window;
    for (int m = 1; m < spec.k; ++m)
        window.emplace_back();
    window.push_back(DensePoly<T>::constant(T(1)));
    for (int m = 1; m <= n; ++m) {
        const std::size_t last = window.size() - 1;
        DensePoly<T> next;
        next -= spec.B * window[last + 1 - static_cast<std::size_t>(spec.ell)];
        next -= spec.A * window[last + 1 - static_cast<std::size_t>(spec.k)];
        window.pop_front();
        window.push_back(std::move(next));
    }
    return window.back();
}

template <class T>
DensePoly<T> closed_form(const RecurrenceSpec<T>& spec, int n)
{
    const LatticeSolutionSet L = lattice_solutions(spec.ell, spec.k, n);
    if (L.empty())
        return {};

    // i grows and j shrinks along L, so the power tables are filled once.
    std::vector<DensePoly<T>> a_pow{DensePoly<T>::constant(T(1))};
    std::vector<DensePoly<T>> b_pow{DensePoly<T>::constant(T(1))};
    while (static_cast<int>(a_pow.size()) <= L.first().j)
        a_pow.push_back(a_pow.back() * spec.A);
    while (static_cast<int>(b_pow.size()) <= L.solutions.back().i)
        b_pow.push_back(b_pow.back() * spec.B);

    DensePoly<T> sum;
    for (const auto& [i, j] : L.solutions) {
        mpz_class c = binomial(static_cast<unsigned long>(i + j), static_cast<unsigned long>(i));
        if ((i + j) % 2 != 0)
            c = -c;
        sum += from_integer<T>(c) * (a_pow[static_cast<std::size_t>(j)] * b_pow[static_cast<std::size_t>(i)]);
    }
    return sum;
}

template struct RecurrenceSpec<mpz_class>;
template struct RecurrenceSpec<cplx>;
template ReducedSpec<mpz_class> reduce_spec(const IntPoly&, const IntPoly&, int, int);
template ReducedSpec<cplx> reduce_spec(const ComplexPoly&, const ComplexPoly&, int, int);
template std::vector<IntPoly> gen_recurrence(const IntSpec&, int);
template std::vector<ComplexPoly> gen_recurrence(const ComplexSpec&, int);
template IntPoly recurrence_term(const IntSpec&, int);
template ComplexPoly recurrence_term(const ComplexSpec&, int);
template IntPoly closed_form(const IntSpec&, int);
template ComplexPoly closed_form(const ComplexSpec&, int);

}  // namespace tranroots
