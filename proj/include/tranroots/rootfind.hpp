#ifndef TRANROOTS_ROOTFIND_HPP
#define TRANROOTS_ROOTFIND_HPP

#include <span>
#include <vector>

#include "tranroots/poly.hpp"

namespace tranroots {

struct Root {
    cplx value;
    double residual = 0.0;  // |p(z)| / Σ|c_i| max(1,|z|)^i
    int multiplicity = 1;   // size of the cluster this root stands for
};

struct RootSet {
    std::vector<Root> roots;
    int source_degree = 0;
    bool converged = false;
    int iterations = 0;

    int count() const noexcept;  // roots weighted by multiplicity
};

/*
 * All complex roots of p by Aberth-Ehrlich iteration.
 *
 * Exact zero roots are deflated first. Starting points sit on the circles of
 * the Newton polygon of |c_i| (offset 0.37 rad), updates are Jacobi style, and
 * each root gets a short Newton polish. Roots closer than 1e-7 are merged into
 * one entry with a multiplicity. The result is deterministic for identical input.
 */
RootSet find_roots(const ComplexPoly& p, const ToleranceConfig& cfg = {});

/*
 * Roots of an exact integer polynomial. The double iteration above runs on
 * the rounded coefficients, then Aberth sweeps in GMP floating point against
 * the exact coefficients repeat with doubling precision until the roots, rounded
 * to double, stop moving. Residuals are taken against the exact polynomial.
 */
RootSet find_roots(const IntPoly& p, const ToleranceConfig& cfg = {});

// Scaled residual per root, in input order.
std::vector<double> residual_report(const ComplexPoly& p, std::span<const cplx> roots);

double residual(const ComplexPoly& p, cplx z) noexcept;

}  // namespace tranroots

#endif  // TRANROOTS_ROOTFIND_HPP
