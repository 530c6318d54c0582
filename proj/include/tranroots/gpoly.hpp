#ifndef TRANROOTS_GPOLY_HPP
#define TRANROOTS_GPOLY_HPP

#include <string>
#include <vector>

#include "tranroots/poly.hpp"
#include "tranroots/recurrence.hpp"

namespace tranroots {

// Lattice-path generating polynomial Σ_u C(i_u + j_u, i_u) τ^{u-1} over the
// lattice set of (ell, k, n), lowest u first.
struct GPoly {
    int ell = 0;
    int k = 0;
    int n = 0;
    IntPoly coeffs;  // in τ
    LatticeSolutionSet lattice;
};

GPoly g_poly(int ell, int k, int n);

enum class RootCertificate {
    sign_alternation,  // degree+1 exact sign changes at dyadic separators
    sturm,             // exact Sturm count over (-inf, 0)
    none,              // floating roots only, nothing proven
};

struct NegativeRoots {
    std::vector<double> roots;  // ascending
    bool certified = false;     // all `degree` roots are real, simple and negative
    RootCertificate method = RootCertificate::none;
    std::string warning;
};

// Beyond these sizes certification is skipped and floating roots are returned.
inline constexpr int kExactIsolationMaxDegree = 400;
inline constexpr long kExactIsolationMaxBits = 16384;

/*
 * Negative real roots of g with an exact root count.
 *
 * Floating Aberth approximations propose separators; the sign of g at each
 * dyadic separator is evaluated in integer arithmetic, so degree sign changes
 * on (-inf, 0] prove every root real, simple and negative. When the proposal
 * fails, a Sturm sequence counts and bisection isolates the roots instead.
 * Each returned root is bracketed by an exact sign change of width
 * <= tol·max(1, |root|).
 */
NegativeRoots real_negative_roots(const IntPoly& g, double tol = 1e-10);
NegativeRoots real_negative_roots(const GPoly& g, double tol = 1e-10);

// Exact sign of p at the double x (every finite double is a dyadic rational).
int sign_at(const IntPoly& p, double x);
int sign_at_neg_infinity(const IntPoly& p);

// Sturm sequence p, p', -rem(...), ... with primitive parts taken along the way.
std::vector<IntPoly> sturm_sequence(const IntPoly& p);

// Number of distinct real roots of p in (a, b], a < b, using a Sturm sequence.
int sturm_count(const std::vector<IntPoly>& seq, double a, double b);

// Distinct real roots of p in (-inf, 0).
int sturm_count_negative(const IntPoly& p);

/*
 * P_n rebuilt from the factorization
 *
 *     P_n = (-1)^{i1+j1} B^{i1} A^{j_s} · Σ_u c_u ((-1)^{k-ell} B^k)^{u-1} (A^ell)^{s-u},
 *
 * i.e. ±B^{i1} A^{j1} G((-1)^{k-ell} B^k / A^ell) with denominators cleared.
 * (i1, j1) is the lattice point with the smallest i and j_s the smallest j.
 */
IntPoly factorized_form(const IntSpec& spec, int n);

}  // namespace tranroots

#endif  // TRANROOTS_GPOLY_HPP
