#include "tranroots/verify.hpp"

#include <cmath>

#include "tranroots/gpoly.hpp"
#include "tranroots/rootfind.hpp"

namespace tranroots {

namespace {

void attach_g_match(RootCheck& rc, const std::vector<double>& g_roots, int ell, int k)
{
    if (g_roots.empty() || rc.verdict.near_ab_zero || !std::isfinite(rc.verdict.signed_value))
        return;
    const cplx w = (k - ell) % 2 == 0 ? rc.verdict.f_value : -rc.verdict.f_value;
    double best = HUGE_VAL;
    for (double g : g_roots) {
        const double rel = std::abs(w - g) / std::abs(g);
        if (rel < best) {
            best = rel;
            rc.g_root = g;
        }
    }
    rc.g_rel_err = best;
}

void classify(RootCheck& rc)
{
    if (rc.verdict.near_ab_zero)
        rc.status = RootStatus::excluded;
    else if (rc.verdict.on_curve && rc.converged)
        rc.status = RootStatus::on_curve;
    else
        rc.status = RootStatus::failed;
}

void summarize(TheoremCheck& out)
{
    out.summary = {};
    for (const auto& r : out.roots) {
        out.summary.total += r.multiplicity;
        switch (r.status) {
        case RootStatus::on_curve: out.summary.on_curve_count += r.multiplicity; break;
        case RootStatus::excluded: out.summary.excluded_count += r.multiplicity; break;
        case RootStatus::failed: out.summary.failed_count += r.multiplicity; break;
        }
    }
}

void load_g_roots(TheoremCheck& out, int ell, int k, int n)
{
    const GPoly g = g_poly(ell, k, n);
    if (g.coeffs.degree() < 1)
        return;
    const NegativeRoots nr = real_negative_roots(g);
    out.g_roots = nr.roots;
    out.g_certified = nr.certified;
}

}  // namespace

StrippedPoly strip_ab_factors(const IntPoly& P, const IntPoly& A, const IntPoly& B)
{
    StrippedPoly out;
    if (A.is_zero() || B.is_zero()) {
        // A·B vanishes identically, so every root is excluded
        out.rest = IntPoly::constant(mpz_class(1));
        if (P.degree() > 0)
            out.factors.push_back(P);
        return out;
    }
    out.rest = P;
    for (const IntPoly* F : {&A, &B}) {
        if (F->degree() < 1)
            continue;
        for (;;) {
            if (out.rest.degree() < 1)
                break;
            const IntPoly g = gcd(out.rest, *F);
            if (g.degree() < 1)
                break;
            out.rest = exact_quotient(out.rest, g);
            out.factors.push_back(g);
        }
    }
    return out;
}

TheoremCheck check_theorem(const IntSpec& spec, int n, const ToleranceConfig& cfg)
{
    cfg.validate();
    if (!spec.coprime())
        throw NotCoprime("check_theorem needs coprime (ell, k)");
    TheoremCheck out;
    out.n = n;
    const IntPoly P = recurrence_term(spec, n);
    out.degree = P.degree();
    out.zero_polynomial = P.is_zero();
    if (P.degree() < 1)
        return out;

    const ComplexPoly A = to_complex(spec.A).poly;
    const ComplexPoly B = to_complex(spec.B).poly;
    load_g_roots(out, spec.ell, spec.k, n);

    const StrippedPoly parts = strip_ab_factors(P, spec.A, spec.B);

    auto solve = [&](const IntPoly& q, bool excluded) {
        const ComplexConversion conv = to_complex_scaled(q);
        out.rounded = out.rounded || conv.rounded;
        out.max_rel_rounding = std::max(out.max_rel_rounding, conv.max_rel_error);
        const RootSet rs = find_roots(q, cfg);
        for (const auto& r : rs.roots) {
            RootCheck rc;
            rc.z = r.value;
            rc.multiplicity = r.multiplicity;
            rc.residual = r.residual;
            rc.converged = r.residual <= cfg.root_residual_tol;
            rc.exact_ab_factor = excluded;
            rc.verdict = membership(A, B, spec.ell, spec.k, r.value, cfg);
            if (excluded) {
                rc.verdict.near_ab_zero = true;
                rc.verdict.on_curve = false;
            }
            attach_g_match(rc, out.g_roots, spec.ell, spec.k);
            classify(rc);
            out.roots.push_back(rc);
        }
    };

    if (parts.rest.degree() >= 1)
        solve(parts.rest, false);
    for (const auto& f : parts.factors)
        solve(f, true);
    summarize(out);
    return out;
}

TheoremCheck check_theorem(const ComplexSpec& spec, int n, const ToleranceConfig& cfg)
{
    cfg.validate();
    if (!spec.coprime())
        throw NotCoprime("check_theorem needs coprime (ell, k)");
    TheoremCheck out;
    out.n = n;
    const ComplexPoly P = recurrence_term(spec, n);
    out.degree = P.degree();
    out.zero_polynomial = P.is_zero();
    if (P.degree() < 1)
        return out;
    load_g_roots(out, spec.ell, spec.k, n);

    const RootSet rs = find_roots(P, cfg);
    for (const auto& r : rs.roots) {
        RootCheck rc;
        rc.z = r.value;
        rc.multiplicity = r.multiplicity;
        rc.residual = r.residual;
        rc.converged = r.residual <= cfg.root_residual_tol;
        rc.verdict = membership(spec.A, spec.B, spec.ell, spec.k, r.value, cfg);
        attach_g_match(rc, out.g_roots, spec.ell, spec.k);
        classify(rc);
        out.roots.push_back(rc);
    }
    summarize(out);
    return out;
}

}  // namespace tranroots
