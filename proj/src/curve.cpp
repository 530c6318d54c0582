#include "tranroots/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

#include "tranroots/recurrence.hpp"
#include "tranroots/rootfind.hpp"

namespace tranroots {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx ipow(cplx x, int e)
{
    cplx r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= x;
    return r;
}

void check_grid(const Box& box, int nx, int ny)
{
    if (!(box.width() > 0) || !(box.height() > 0))
        throw InvalidArgument("curve box has zero area");
    if (nx < 2 || ny < 2)
        throw InvalidArgument("curve grid needs at least 2 nodes per axis");
}

/*
 * Marching squares over a cell sampler. The sampler supplies
 *   bool corners(ix, iy, std::array<double, 4>&)   false = masked cell
 *   double value(ix, iy, z)                         the cell's field at z
 *   bool accept(ix, iy, z, slack)                   keep a crossing at z, where the
 *                                                   field may be at most slack in size
 * Corners are ordered (ix,iy), (ix+1,iy), (ix+1,iy+1), (ix,iy+1).
 */
template <class Sampler>
CurveSegments march(Sampler& sampler, const Box& box, int nx, int ny, const TraceOptions& opts)
{
    CurveSegments out;
    out.box = box;
    out.nx = nx;
    out.ny = ny;

    const double dx = box.width() / (nx - 1);
    const double dy = box.height() / (ny - 1);
    auto node = [&](int ix, int iy) { return cplx(box.re_min + ix * dx, box.im_min + iy * dy); };

    const std::size_t horizontal = static_cast<std::size_t>(ny) * static_cast<std::size_t>(nx - 1);
    const std::size_t edges = horizontal + static_cast<std::size_t>(ny - 1) * static_cast<std::size_t>(nx);
    auto h_edge = [&](int ix, int iy) { return static_cast<std::size_t>(iy) * (nx - 1) + ix; };
    auto v_edge = [&](int ix, int iy) { return horizontal + static_cast<std::size_t>(iy) * nx + ix; };

    std::vector<cplx> point(edges);
    std::vector<signed char> state(edges, 0);  // 0 unknown, 1 valid, -1 rejected
    std::vector<std::array<int, 2>> seg_at(edges, {-1, -1});
    std::vector<std::array<std::size_t, 2>> segs;

    for (int iy = 0; iy + 1 < ny; ++iy) {
        for (int ix = 0; ix + 1 < nx; ++ix) {
            std::array<double, 4> v;
            if (!sampler.corners(ix, iy, v))
                continue;
            int mask = 0;
            for (int c = 0; c < 4; ++c)
                mask |= (v[c] >= 0.0 ? 1 : 0) << c;
            if (mask == 0 || mask == 15)
                continue;

            const std::array<cplx, 4> p{node(ix, iy), node(ix + 1, iy), node(ix + 1, iy + 1), node(ix, iy + 1)};
            const std::array<std::size_t, 4> id{h_edge(ix, iy), v_edge(ix + 1, iy), h_edge(ix, iy + 1),
                                                v_edge(ix, iy)};
            constexpr std::array<std::array<int, 2>, 4> ends{{{0, 1}, {1, 2}, {3, 2}, {0, 3}}};

            auto crossing = [&](int e) -> bool {
                const std::size_t k = id[e];
                if (state[k] != 0)
                    return state[k] > 0;
                const int a = ends[e][0], b = ends[e][1];
                const double va = v[a], vb = v[b];
                const double t = va / (va - vb);
                cplx z = p[a] + t * (p[b] - p[a]);
                if (opts.refine_crossings) {
                    // Illinois variant of regula falsi on the cell's field
                    double lo = 0.0, hi = 1.0, flo = va, fhi = vb;
                    int side = 0;
                    double tt = t;
                    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
                        tt = lo + flo * (hi - lo) / (flo - fhi);
                        if (!(tt > lo && tt < hi))
                            tt = 0.5 * (lo + hi);
                        const double f = sampler.value(ix, iy, p[a] + tt * (p[b] - p[a]));
                        if (!std::isfinite(f))
                            break;
                        if (f == 0.0) {
                            lo = hi = tt;
                            break;
                        }
                        if ((f >= 0.0) == (flo >= 0.0)) {
                            lo = tt;
                            flo = f;
                            if (side == -1)
                                fhi *= 0.5;
                            side = -1;
                        } else {
                            hi = tt;
                            fhi = f;
                            if (side == 1)
                                flo *= 0.5;
                            side = 1;
                        }
                    }
                    z = p[a] + tt * (p[b] - p[a]);
                }
                point[k] = z;
                const double slack = (opts.refine_crossings ? 1e-6 : 0.25) * std::max(std::abs(va), std::abs(vb));
                state[k] = sampler.accept(ix, iy, z, slack) ? 1 : -1;
                return state[k] > 0;
            };

            auto add = [&](int e0, int e1) {
                const bool ok0 = crossing(e0);
                const bool ok1 = crossing(e1);
                if (!ok0 || !ok1)
                    return;
                const int s = static_cast<int>(segs.size());
                segs.push_back({id[e0], id[e1]});
                for (std::size_t k : {id[e0], id[e1]})
                    (seg_at[k][0] < 0 ? seg_at[k][0] : seg_at[k][1]) = s;
            };

            std::array<int, 4> crossed{};
            int n = 0;
            for (int e = 0; e < 4; ++e)
                if (((mask >> ends[e][0]) & 1) != ((mask >> ends[e][1]) & 1))
                    crossed[n++] = e;
            if (n == 2) {
                add(crossed[0], crossed[1]);
                continue;
            }
            // saddle: corners 0 and 2 share a sign, 1 and 3 the other
            const double centre = sampler.value(ix, iy, 0.5 * (p[0] + p[2]));
            const bool centre_like_0 = std::isfinite(centre) ? ((centre >= 0.0) == (v[0] >= 0.0)) : true;
            if (centre_like_0) {
                add(0, 1);  // isolate corner 1
                add(2, 3);  // isolate corner 3
            } else {
                add(3, 0);  // isolate corner 0
                add(1, 2);  // isolate corner 2
            }
        }
    }

    // link segments that share an edge crossing into polylines
    std::vector<bool> used(segs.size(), false);
    auto other = [&](std::size_t edge, int from) -> int {
        for (int s : seg_at[edge])
            if (s >= 0 && s != from && !used[static_cast<std::size_t>(s)])
                return s;
        return -1;
    };
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0])
            continue;
        used[s0] = true;
        std::deque<std::size_t> chain{segs[s0][0], segs[s0][1]};
        for (int dir = 0; dir < 2; ++dir) {
            int cur = static_cast<int>(s0);
            for (;;) {
                const std::size_t edge = dir == 0 ? chain.back() : chain.front();
                const int nxt = other(edge, cur);
                if (nxt < 0)
                    break;
                used[static_cast<std::size_t>(nxt)] = true;
                const auto& sg = segs[static_cast<std::size_t>(nxt)];
                const std::size_t far = sg[0] == edge ? sg[1] : sg[0];
                if (dir == 0)
                    chain.push_back(far);
                else
                    chain.push_front(far);
                cur = nxt;
            }
        }
        std::vector<cplx> line;
        line.reserve(chain.size());
        for (std::size_t e : chain)
            line.push_back(point[e]);
        // open chains start at the end with the smaller (re, im)
        const cplx a = line.front(), b = line.back();
        if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag()))
            std::reverse(line.begin(), line.end());
        out.segments.push_back(std::move(line));
    }
    return out;
}

class FieldSampler {
public:
    FieldSampler(const ScalarField& f, const Box& box, int nx, int ny) : f_(f), nx_(nx)
    {
        const double dx = box.width() / (nx - 1);
        const double dy = box.height() / (ny - 1);
        values_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                values_[at(ix, iy)] = f(cplx(box.re_min + ix * dx, box.im_min + iy * dy));
    }

    bool corners(int ix, int iy, std::array<double, 4>& v) const
    {
        v = {values_[at(ix, iy)], values_[at(ix + 1, iy)], values_[at(ix + 1, iy + 1)], values_[at(ix, iy + 1)]};
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    }

    double value(int, int, cplx z) const { return f_(z); }
    bool accept(int, int, cplx, double) const { return true; }

private:
    std::size_t at(int ix, int iy) const
    {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
    }

    const ScalarField& f_;
    int nx_;
    std::vector<double> values_;
};

// Index of the root in `roots` nearest to `target`, skipping `exclude`.
std::size_t nearest(const std::vector<cplx>& roots, cplx target, std::size_t exclude)
{
    std::size_t best = roots.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i == exclude)
            continue;
        const double d = std::abs(roots[i] - target);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

class BkwSampler {
public:
    BkwSampler(std::span<const ComplexPoly> Q, const Box& box, int nx, int ny, const ToleranceConfig& cfg)
        : Q_(Q), cfg_(cfg), nx_(nx)
    {
        const double dx = box.width() / (nx - 1);
        const double dy = box.height() / (ny - 1);
        roots_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                roots_[at(ix, iy)] = symbol_roots(Q_, cplx(box.re_min + ix * dx, box.im_min + iy * dy), cfg_);
    }

    bool corners(int ix, int iy, std::array<double, 4>& v)
    {
        const auto& ref = roots_[at(ix, iy)];
        ref_a_ = ref[0];
        ref_b_ = ref[1];
        cell_ = {ix, iy};
        const std::array<std::size_t, 4> nodes{at(ix, iy), at(ix + 1, iy), at(ix + 1, iy + 1), at(ix, iy + 1)};
        for (int c = 0; c < 4; ++c)
            v[c] = labelled(roots_[nodes[c]]);
        return true;
    }

    double value(int ix, int iy, cplx z)
    {
        select(ix, iy);
        return labelled(symbol_roots(Q_, z, cfg_));
    }

    // The followed pair must have equal moduli and still be the dominant pair at the crossing.
    // A sign change without a zero comes from the labels swapping inside the cell.
    bool accept(int ix, int iy, cplx z, double slack)
    {
        select(ix, iy);
        const auto r = symbol_roots(Q_, z, cfg_);
        const std::size_t ia = nearest(r, ref_a_, r.size());
        const std::size_t ib = nearest(r, ref_b_, ia);
        if (!(std::abs(std::abs(r[ia]) - std::abs(r[ib])) <= slack))
            return false;
        const double second = std::min(std::abs(r[ia]), std::abs(r[ib]));
        double third = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (i != ia && i != ib)
                third = std::max(third, std::abs(r[i]));
        return third <= second * (1.0 + 1e-6) + 1e-12;
    }

private:
    void select(int ix, int iy)
    {
        if (cell_[0] == ix && cell_[1] == iy)
            return;
        std::array<double, 4> unused;
        corners(ix, iy, unused);
    }

    double labelled(const std::vector<cplx>& r) const
    {
        const std::size_t ia = nearest(r, ref_a_, r.size());
        const std::size_t ib = nearest(r, ref_b_, ia);
        return std::abs(r[ia]) - std::abs(r[ib]);
    }

    std::size_t at(int ix, int iy) const
    {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
    }

    std::span<const ComplexPoly> Q_;
    ToleranceConfig cfg_;
    int nx_;
    std::vector<std::vector<cplx>> roots_;
    cplx ref_a_, ref_b_;
    std::array<int, 2> cell_{-1, -1};
};

double point_segment_distance(cplx z, cplx a, cplx b) noexcept
{
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0)
        return std::abs(z - a);
    const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

}  // namespace

RationalValue rational_map_value(const ComplexPoly& A, const ComplexPoly& B, int ell, int k, cplx z) noexcept
{
    const cplx a = ipow(eval(A, z), ell);
    if (!(std::abs(a) >= kPoleThreshold))
        return {cplx(kNaN, kNaN), true};
    return {ipow(eval(B, z), k) / a, false};
}

MembershipVerdict membership(const ComplexPoly& A, const ComplexPoly& B, int ell, int k, cplx z,
                             const ToleranceConfig& cfg)
{
    if (gcd(ell, k) != 1)
        throw NotCoprime("membership needs coprime (ell, k)");
    MembershipVerdict v;
    v.z = z;
    const RationalValue f = rational_map_value(A, B, ell, k, z);
    v.f_value = f.value;
    const double abs_z = std::abs(z);
    const double ab = std::abs(eval(A, z)) * std::abs(eval(B, z));
    v.near_ab_zero = f.pole || ab <= cfg.ab_exclusion_eps * eval_scale(A, abs_z) * eval_scale(B, abs_z);
    if (f.pole) {
        v.im_abs = std::numeric_limits<double>::infinity();
        v.signed_value = kNaN;
        v.on_curve = false;
        return v;
    }
    v.im_abs = std::abs(f.value.imag());
    v.signed_value = (k - ell) % 2 == 0 ? f.value.real() : -f.value.real();
    v.on_curve = !v.near_ab_zero && v.im_abs <= cfg.curve_im_tol * std::max(1.0, std::abs(f.value));
    return v;
}

double tran_bound(int k)
{
    if (k < 2)
        throw InvalidArgument("tran_bound needs k >= 2");
    return std::pow(static_cast<double>(k), k) / std::pow(static_cast<double>(k - 1), k - 1);
}

TranVerdict tran_region_check(const ComplexPoly& A, const ComplexPoly& B, int k, cplx z, const ToleranceConfig& cfg)
{
    if (k < 2)
        throw InvalidArgument("tran_region_check needs k >= 2");
    TranVerdict t;
    t.base = membership(A, B, 1, k, z, cfg);
    t.bound = tran_bound(k);
    const double re = t.base.f_value.real();
    t.region_value = k % 2 == 0 ? re : -re;
    const double tol = cfg.curve_im_tol;
    t.re_in_range = std::isfinite(re) && t.region_value >= -tol && t.region_value <= t.bound + tol;
    return t;
}

std::vector<ComplexPoly> tran_symbol(const ComplexPoly& A, const ComplexPoly& B, int ell, int k)
{
    if (ell < 1 || k <= ell)
        throw InvalidArgument("tran_symbol needs 1 <= ell < k");
    std::vector<ComplexPoly> Q(static_cast<std::size_t>(k));
    Q[static_cast<std::size_t>(ell - 1)] = B;
    Q[static_cast<std::size_t>(k - 1)] = Q[static_cast<std::size_t>(k - 1)] + A;
    return Q;
}

std::vector<cplx> symbol_roots(std::span<const ComplexPoly> Q, cplx z, const ToleranceConfig& cfg)
{
    const std::size_t k = Q.size();
    if (k < 2)
        throw InvalidArgument("symbol equation needs k >= 2");
    std::vector<cplx> c(k + 1);
    c[k] = 1.0;
    for (std::size_t m = 1; m <= k; ++m)
        c[k - m] = eval(Q[m - 1], z);
    const RootSet rs = find_roots(ComplexPoly(std::move(c)), cfg);
    std::vector<cplx> t;
    t.reserve(k);
    for (const auto& r : rs.roots)
        for (int m = 0; m < r.multiplicity; ++m)
            t.push_back(r.value);
    std::stable_sort(t.begin(), t.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    return t;
}

double bkw_discriminator(std::span<const ComplexPoly> Q, cplx z, const ToleranceConfig& cfg)
{
    const auto t = symbol_roots(Q, z, cfg);
    return std::abs(t[0]) - std::abs(t[1]);
}

ScalarField im_curve_field(const ComplexPoly& A, const ComplexPoly& B, int ell, int k)
{
    return [A, B, ell, k](cplx z) {
        const cplx a = eval(A, z);
        const cplx b = eval(B, z);
        const double ma = std::abs(a), mb = std::abs(b);
        if (!(ma > 0) || !(mb > 0))
            return 0.0;
        const cplx w = ipow(b / mb, k) * ipow(std::conj(a / ma), ell);
        return w.imag();
    };
}

ScalarField tran_region_field(const ComplexPoly& A, const ComplexPoly& B, int k)
{
    const double bound = tran_bound(k);
    const ScalarField base = im_curve_field(A, B, 1, k);
    return [A, B, k, bound, base](cplx z) {
        const RationalValue f = rational_map_value(A, B, 1, k, z);
        if (f.pole)
            return kNaN;
        const double r = (k % 2 == 0 ? 1.0 : -1.0) * f.value.real();
        if (r < 0 || r > bound)
            return kNaN;
        return base(z);
    };
}

Box default_box(double radius)
{
    const double h = 1.1 * radius;
    return {-h, -h, h, h};
}

double CurveSegments::cell_diagonal() const noexcept
{
    if (nx < 2 || ny < 2)
        return 0.0;
    return std::hypot(box.width() / (nx - 1), box.height() / (ny - 1));
}

std::size_t CurveSegments::point_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& s : segments)
        n += s.size();
    return n;
}

CurveSegments trace_curve(const ScalarField& field, const Box& box, int nx, int ny, const TraceOptions& opts)
{
    check_grid(box, nx, ny);
    FieldSampler sampler(field, box, nx, ny);
    return march(sampler, box, nx, ny, opts);
}

CurveSegments trace_bkw_curve(std::span<const ComplexPoly> Q, const Box& box, int nx, int ny,
                              const ToleranceConfig& cfg, const TraceOptions& opts)
{
    check_grid(box, nx, ny);
    if (Q.size() < 2)
        throw InvalidArgument("symbol equation needs k >= 2");
    BkwSampler sampler(Q, box, nx, ny, cfg);
    return march(sampler, box, nx, ny, opts);
}

double distance_to_curve(const CurveSegments& curve, cplx z) noexcept
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : curve.segments) {
        if (line.size() == 1)
            best = std::min(best, std::abs(z - line[0]));
        for (std::size_t i = 0; i + 1 < line.size(); ++i)
            best = std::min(best, point_segment_distance(z, line[i], line[i + 1]));
    }
    return best;
}

}  // namespace tranroots
