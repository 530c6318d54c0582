#ifndef TRANROOTS_VERIFY_HPP
#define TRANROOTS_VERIFY_HPP

#include <optional>
#include <vector>

#include "tranroots/curve.hpp"
#include "tranroots/poly.hpp"
#include "tranroots/recurrence.hpp"

namespace tranroots {

enum class RootStatus { on_curve, excluded, failed };

struct RootCheck {
    cplx z;
    int multiplicity = 1;
    double residual = 0;
    bool converged = false;          // residual <= root_residual_tol
    bool exact_ab_factor = false;    // came from a factor shared exactly with A or B
    MembershipVerdict verdict;
    std::optional<double> g_root;    // nearest negative root of G
    double g_rel_err = 0;            // |(-1)^{k-ell} f - g_root| / |g_root|
    RootStatus status = RootStatus::failed;
};

struct CheckSummary {
    int total = 0;
    int on_curve_count = 0;
    int excluded_count = 0;
    int failed_count = 0;
};

struct TheoremCheck {
    int n = 0;
    int degree = -1;
    bool zero_polynomial = false;
    std::vector<RootCheck> roots;
    CheckSummary summary;
    bool rounded = false;        // coefficients lost precision on the way to doubles
    double max_rel_rounding = 0;
    std::vector<double> g_roots;
    bool g_certified = false;
};

// P with every factor it shares with A or B divided out.
struct StrippedPoly {
    IntPoly rest;
    std::vector<IntPoly> factors;  // removed pieces, each dividing A·B
};

StrippedPoly strip_ab_factors(const IntPoly& P, const IntPoly& A, const IntPoly& B);

/*
 * Finds every root of P_n and classifies it against Im(B^k/A^ell) = 0.
 *
 * Exact mode removes the factors P_n shares with A and B before root
 * finding, so roots sitting on zeros of A·B (often multiple) are reported as
 * excluded instead of being smeared by floating iteration. Each remaining
 * root is also matched against the negative roots of G_{ell,k,n}.
 * Counts in the summary are weighted by multiplicity. Requires coprime (ell, k).
 */
TheoremCheck check_theorem(const IntSpec& spec, int n, const ToleranceConfig& cfg = {});
TheoremCheck check_theorem(const ComplexSpec& spec, int n, const ToleranceConfig& cfg = {});

}  // namespace tranroots

#endif  // TRANROOTS_VERIFY_HPP
