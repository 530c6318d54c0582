#ifndef TRANROOTS_RECURRENCE_HPP
#define TRANROOTS_RECURRENCE_HPP

#include <cstddef>
#include <vector>

#include "tranroots/poly.hpp"

namespace tranroots {

/*
 * The three-term recurrence
 *
 *     P_n + B·P_{n-ell} + A·P_{n-k} = 0,   1 <= ell < k,
 *
 * with P_0 = 1 and P_{-1} = ... = P_{-k+1} = 0.
 */
template <class T>
struct RecurrenceSpec {
    DensePoly<T> A;
    DensePoly<T> B;
    int ell = 1;
    int k = 2;

    // Throws InvalidArgument unless 1 <= ell < k and A, B are not both zero.
    static RecurrenceSpec make(DensePoly<T> a, DensePoly<T> b, int ell, int k);

    bool coprime() const noexcept;
};

using IntSpec = RecurrenceSpec<mpz_class>;
using ComplexSpec = RecurrenceSpec<cplx>;

ComplexSpec to_complex(const IntSpec& spec);

struct LatticePoint {
    int i;  // power of B
    int j;  // power of A
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// Nonnegative solutions of i·ell + j·k = n, increasing in i.
struct LatticeSolutionSet {
    int n = 0;
    std::vector<LatticePoint> solutions;

    std::size_t size() const noexcept { return solutions.size(); }
    bool empty() const noexcept { return solutions.empty(); }
    const LatticePoint& first() const { return solutions.front(); }
};

int gcd(int a, int b) noexcept;

// Throws NotCoprime when gcd(ell, k) != 1, InvalidArgument on n < 0 or nonpositive ell, k.
LatticeSolutionSet lattice_solutions(int ell, int k, int n);

template <class T>
struct ReducedSpec {
    RecurrenceSpec<T> spec;  // (ell/d, k/d)
    int dilation = 1;        // d = gcd(ell, k)
};

// For d = gcd(ell, k): Q_{d·n} of the original sequence is P_n of the reduced
// one and Q_m = 0 whenever d does not divide m.
template <class T>
ReducedSpec<T> reduce_spec(const DensePoly<T>& A, const DensePoly<T>& B, int ell, int k);

// P_0 .. P_{n_max} by iterating the recurrence.
template <class T>
std::vector<DensePoly<T>> gen_recurrence(const RecurrenceSpec<T>& spec, int n_max);

// P_n alone, keeping only the last k terms alive.
template <class T>
DensePoly<T> recurrence_term(const RecurrenceSpec<T>& spec, int n);

// Σ_{(i,j) in L} (-1)^{i+j} C(i+j, i) A^j B^i. Requires coprime (ell, k).
template <class T>
DensePoly<T> closed_form(const RecurrenceSpec<T>& spec, int n);

// C(n, r) exactly.
mpz_class binomial(unsigned long n, unsigned long r);

}  // namespace tranroots

#endif  // TRANROOTS_RECURRENCE_HPP
