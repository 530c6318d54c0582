#ifndef TRANROOTS_CURVE_HPP
#define TRANROOTS_CURVE_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tranroots/poly.hpp"

namespace tranroots {

struct RationalValue {
    cplx value;         // B^k(z) / A^ell(z), NaN when pole
    bool pole = false;  // |A(z)|^ell fell below 1e-300
};

// Smallest |A(z)|^ell treated as nonzero.
inline constexpr double kPoleThreshold = 1e-300;

RationalValue rational_map_value(const ComplexPoly& A, const ComplexPoly& B, int ell, int k, cplx z) noexcept;

struct MembershipVerdict {
    cplx z;
    cplx f_value;         // B^k/A^ell at z
    double im_abs = 0;    // |Im f|
    double signed_value;  // Re((-1)^{k-ell} f)
    bool near_ab_zero = false;
    bool on_curve = false;
};

/*
 * Decides whether z lies on Im(B^k/A^ell) = 0. The test is relative,
 * |Im f| <= curve_im_tol·max(1, |f|), and points where |A(z)B(z)| is below
 * ab_exclusion_eps times the coefficient scale of A and B are excluded.
 */
MembershipVerdict membership(const ComplexPoly& A, const ComplexPoly& B, int ell, int k, cplx z,
                             const ToleranceConfig& cfg = {});

// k^k / (k-1)^(k-1)
double tran_bound(int k);

struct TranVerdict {
    MembershipVerdict base;   // with ell = 1
    double region_value = 0;  // (-1)^k Re(B^k/A)
    double bound = 0;
    bool re_in_range = false;
};

// ell = 1 region: Im(B^k/A) = 0 and 0 <= (-1)^k Re(B^k/A) <= tran_bound(k), both within curve_im_tol.
TranVerdict tran_region_check(const ComplexPoly& A, const ComplexPoly& B, int k, cplx z,
                              const ToleranceConfig& cfg = {});

// Q_1..Q_k of the symbol equation t^k + Q_1 t^{k-1} + ... + Q_k = 0 for the three-term recurrence.
std::vector<ComplexPoly> tran_symbol(const ComplexPoly& A, const ComplexPoly& B, int ell, int k);

// Roots of the symbol equation at z sorted by modulus, largest first.
std::vector<cplx> symbol_roots(std::span<const ComplexPoly> Q, cplx z, const ToleranceConfig& cfg = {});

// |t_1| - |t_2| for the two largest-modulus roots of the symbol equation at z.
double bkw_discriminator(std::span<const ComplexPoly> Q, cplx z, const ToleranceConfig& cfg = {});

struct Box {
    double re_min = -1, im_min = -1, re_max = 1, im_max = 1;

    double width() const noexcept { return re_max - re_min; }
    double height() const noexcept { return im_max - im_min; }
    bool contains(cplx z) const noexcept
    {
        return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
    }
};

// Square of half-width 1.1 * radius centred at the origin.
Box default_box(double radius);

struct CurveSegments {
    std::vector<std::vector<cplx>> segments;  // polylines
    Box box;
    int nx = 0;
    int ny = 0;

    double cell_diagonal() const noexcept;
    std::size_t point_count() const noexcept;
};

using ScalarField = std::function<double(cplx)>;

struct TraceOptions {
    // Replace the linear edge interpolation by a bracketed secant solve on the field.
    bool refine_crossings = false;
};

/*
 * Im(B^k/A^ell) / |B^k/A^ell| computed from unit phases, so it stays bounded
 * near poles and zeros. Its zero set off the zeros of A·B is the curve.
 */
ScalarField im_curve_field(const ComplexPoly& A, const ComplexPoly& B, int ell, int k);

// im_curve_field for ell = 1, NaN where (-1)^k Re(B^k/A) leaves [0, tran_bound(k)].
ScalarField tran_region_field(const ComplexPoly& A, const ComplexPoly& B, int k);

/*
 * Zero-level contour of field on an nx-by-ny node grid (marching squares).
 * Edge crossings are linearly interpolated; saddle cells are split according
 * to the field at the cell centre. Non-finite node values are masked and any
 * cell touching one is skipped. Polylines are assembled in row-major cell order.
 */
CurveSegments trace_curve(const ScalarField& field, const Box& box, int nx, int ny,
                          const TraceOptions& opts = {});

/*
 * Zero set of the discriminator, which is nonnegative everywhere. Each cell
 * labels the two dominant roots at its first corner and follows them to the
 * other corners by nearest-root matching; the signed difference of their
 * moduli is contoured inside that cell.
 */
CurveSegments trace_bkw_curve(std::span<const ComplexPoly> Q, const Box& box, int nx, int ny,
                              const ToleranceConfig& cfg = {}, const TraceOptions& opts = {});

// Distance from z to the nearest polyline segment (infinity when there are none).
double distance_to_curve(const CurveSegments& curve, cplx z) noexcept;

}  // namespace tranroots

#endif  // TRANROOTS_CURVE_HPP
