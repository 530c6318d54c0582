#include "tranroots/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tranroots/errors.hpp"

namespace tranroots {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAngleOffset = 0.37;
constexpr double kClusterRadius = 1e-7;

// p(z), p'(z)/p(z) and the running-error scale Σ|c_i||z|^i, all evaluated on
// the reversed polynomial when |z| > 1 to keep magnitudes bounded.
struct Evaluation {
    double abs_value;  // |p(z)| (scaled by |z|^-d when |z| > 1)
    double scale;      // Σ|c_i||z|^i (same scaling)
    cplx log_deriv;    // p'(z)/p(z); zero when p(z) == 0
};

Evaluation evaluate(const std::vector<cplx>& c, cplx z)
{
    const std::size_t d = c.size() - 1;
    const double az = std::abs(z);
    if (az <= 1.0) {
        cplx v = 0.0, dv = 0.0;
        double s = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) {
            dv = dv * z + v;
            v = v * z + c[i];
            s = s * az + std::abs(c[i]);
        }
        return {std::abs(v), s, v == cplx(0.0) ? cplx(0.0) : dv / v};
    }
    const cplx w = 1.0 / z;
    const double aw = 1.0 / az;
    cplx q = 0.0, dq = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
        dq = dq * w + q;
        q = q * w + c[i];
        s = s * aw + std::abs(c[i]);
    }
    if (q == cplx(0.0))
        return {0.0, s, 0.0};
    return {std::abs(q), s, w * (static_cast<double>(d) - w * dq / q)};
}

double scaled_residual(const std::vector<cplx>& c, cplx z)
{
    const double az = std::abs(z);
    if (az <= 1.0) {
        cplx v = 0.0;
        double s = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) {
            v = v * z + c[i];
            s += std::abs(c[i]);
        }
        return s == 0.0 ? 0.0 : std::abs(v) / s;
    }
    const auto e = evaluate(c, z);
    return e.scale == 0.0 ? 0.0 : e.abs_value / e.scale;
}

// Starting points on the circles given by the upper convex hull of (i, log|c_i|).
std::vector<cplx> initial_points(const std::vector<cplx>& c, double bound)
{
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<int> idx;
    std::vector<double> lg;
    for (int i = 0; i <= d; ++i) {
        const double a = std::abs(c[static_cast<std::size_t>(i)]);
        if (a == 0.0)
            continue;
        const double y = std::log(a);
        while (idx.size() >= 2) {
            const std::size_t m = idx.size();
            const double x1 = idx[m - 2], y1 = lg[m - 2];
            const double x2 = idx[m - 1], y2 = lg[m - 1];
            // drop the middle point when it lies on or below the chord
            if ((y2 - y1) * (i - x1) <= (y - y1) * (x2 - x1)) {
                idx.pop_back();
                lg.pop_back();
            } else {
                break;
            }
        }
        idx.push_back(i);
        lg.push_back(y);
    }

    std::vector<cplx> z;
    z.reserve(static_cast<std::size_t>(d));
    for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
        const int count = idx[e + 1] - idx[e];
        double r = std::exp((lg[e] - lg[e + 1]) / count);
        r = std::min(r, bound);
        const double phase = kAngleOffset + 0.5 * static_cast<double>(e);
        for (int m = 0; m < count; ++m) {
            const double theta = 2.0 * std::numbers::pi * m / count + phase;
            z.emplace_back(r * std::cos(theta), r * std::sin(theta));
        }
    }
    return z;
}

void polish(const std::vector<cplx>& c, cplx& z)
{
    double best = scaled_residual(c, z);
    for (int it = 0; it < 3 && best > 0.0; ++it) {
        const auto e = evaluate(c, z);
        if (e.log_deriv == cplx(0.0))
            break;
        const cplx next = z - 1.0 / e.log_deriv;
        const double r = scaled_residual(c, next);
        if (!(r < best))
            break;
        best = r;
        z = next;
    }
}

struct RawRoots {
    std::vector<cplx> z;   // without the deflated zero roots
    std::size_t zeros = 0;
    int iterations = 0;
    bool stopped = true;
};

RawRoots aberth(const std::vector<cplx>& coeffs, const ToleranceConfig& cfg)
{
    RawRoots out;
    while (coeffs[out.zeros] == cplx(0.0))
        ++out.zeros;
    std::vector<cplx> c(coeffs.begin() + static_cast<std::ptrdiff_t>(out.zeros), coeffs.end());
    const std::size_t d = c.size() - 1;
    auto& z = out.z;
    if (d == 1) {
        z.push_back(-c[0] / c[1]);
    } else if (d > 1) {
        const double bound = cauchy_root_bound(ComplexPoly(c));
        z = initial_points(c, bound);
        std::vector<bool> stopped(d, false);
        std::vector<cplx> next(d);
        int it = 0;
        std::size_t active = d;
        for (; it < cfg.max_aberth_iters && active > 0; ++it) {
            for (std::size_t i = 0; i < d; ++i) {
                next[i] = z[i];
                if (stopped[i])
                    continue;
                const auto e = evaluate(c, z[i]);
                if (e.abs_value <= 4.0 * kEps * static_cast<double>(d + 1) * e.scale) {
                    stopped[i] = true;
                    --active;
                    continue;
                }
                cplx s = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == i)
                        continue;
                    const cplx diff = z[i] - z[j];
                    if (diff != cplx(0.0))
                        s += 1.0 / diff;
                }
                const cplx denom = e.log_deriv - s;
                if (denom == cplx(0.0))
                    continue;
                const cplx step = 1.0 / denom;
                next[i] = z[i] - step;
                if (std::abs(step) <= kEps * std::abs(next[i])) {
                    stopped[i] = true;
                    --active;
                }
            }
            z.swap(next);
        }
        out.iterations = it;
        out.stopped = active == 0;
        for (auto& zi : z)
            polish(c, zi);
    }
    return out;
}

// Merges roots closer than kClusterRadius; zero roots from deflation come first.
std::vector<Root> cluster(const std::vector<cplx>& z, std::size_t zeros)
{
    std::vector<Root> roots;
    if (zeros > 0)
        roots.push_back({cplx(0.0), 0.0, static_cast<int>(zeros)});
    std::vector<bool> used(z.size(), false);
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (used[i])
            continue;
        std::vector<std::size_t> members{i};
        used[i] = true;
        for (std::size_t m = 0; m < members.size(); ++m) {
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (!used[j] && std::abs(z[members[m]] - z[j]) <= kClusterRadius) {
                    used[j] = true;
                    members.push_back(j);
                }
            }
        }
        cplx mean = 0.0;
        for (auto m : members)
            mean += z[m];
        mean /= static_cast<double>(members.size());
        roots.push_back({mean, 0.0, static_cast<int>(members.size())});
    }
    return roots;
}

// ---- multiprecision refinement against exact integer coefficients ----

struct Mc {
    mpf_class re, im;
};

// log2 |x|, -inf for zero
double log2_abs(const mpf_class& x)
{
    if (sgn(x) == 0)
        return -HUGE_VAL;
    long e = 0;
    const double m = mpf_get_d_2exp(&e, x.get_mpf_t());
    return std::log2(std::abs(m)) + static_cast<double>(e);
}

double log2_abs(const Mc& z)
{
    const mpf_class n2 = z.re * z.re + z.im * z.im;
    return 0.5 * log2_abs(n2);
}

class MpAberth {
public:
    MpAberth(const std::vector<mpz_class>& c, unsigned prec) : prec_(prec)
    {
        mpf_set_default_prec(prec);
        for (const auto& x : c) {
            c_.emplace_back(x);
            log_c_.push_back(sgn(x) == 0 ? -HUGE_VAL : log2_abs(mpf_class(x)));
        }
    }

    // Gauss-Seidel Aberth sweeps; true when every root stopped.
    bool run(std::vector<Mc>& z, int max_iters) const
    {
        const std::size_t d = c_.size() - 1;
        std::vector<bool> stopped(d, false);
        std::size_t active = d;
        const double tiny = -static_cast<double>(prec_) + 24.0;
        Mc p, dp, s, t;
        mpf_class den, tr;
        for (int it = 0; it < max_iters && active > 0; ++it) {
            for (std::size_t i = 0; i < d; ++i) {
                if (stopped[i])
                    continue;
                horner(z[i], p, dp);
                const double lz = std::max(log2_abs(z[i]), -1e6);
                const double lp = log2_abs(p);
                if (lp == -HUGE_VAL || lp <= max_term(lz) + tiny) {
                    stopped[i] = true;
                    --active;
                    continue;
                }
                // N = p / p'
                if (sgn(dp.re) == 0 && sgn(dp.im) == 0)
                    continue;
                Mc N;
                div(p, dp, N, den);
                // S = Σ 1/(z_i - z_j)
                s.re = 0;
                s.im = 0;
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == i)
                        continue;
                    t.re = z[i].re - z[j].re;
                    t.im = z[i].im - z[j].im;
                    den = t.re * t.re + t.im * t.im;
                    if (sgn(den) == 0)
                        continue;
                    s.re += t.re / den;
                    s.im -= t.im / den;
                }
                // step = N / (1 - N·S)
                Mc q;
                q.re = 1 - (N.re * s.re - N.im * s.im);
                q.im = -(N.re * s.im + N.im * s.re);
                Mc step;
                if (sgn(q.re) == 0 && sgn(q.im) == 0)
                    step = N;
                else
                    div(N, q, step, den);
                z[i].re -= step.re;
                z[i].im -= step.im;
                if (log2_abs(step) <= std::max(lz, -64.0) + tiny) {
                    stopped[i] = true;
                    --active;
                }
            }
        }
        return active == 0;
    }

    // |p(z)| / Σ|c_i| max(1,|z|)^i
    double residual(cplx zd) const
    {
        Mc z{mpf_class(zd.real()), mpf_class(zd.imag())};
        Mc p, dp;
        horner(z, p, dp);
        const mpf_class r = std::max(1.0, std::abs(zd));
        mpf_class scale = 0, pw = 1;
        for (const auto& c : c_) {
            scale += abs(c) * pw;
            pw *= r;
        }
        const mpf_class n = sqrt(p.re * p.re + p.im * p.im);
        return mpf_class(n / scale).get_d();
    }

private:
    void horner(const Mc& z, Mc& p, Mc& dp) const
    {
        const std::size_t d = c_.size() - 1;
        p.re = c_[d];
        p.im = 0;
        dp.re = 0;
        dp.im = 0;
        mpf_class a, b;
        for (std::size_t m = d; m-- > 0;) {
            a = dp.re * z.re - dp.im * z.im + p.re;
            b = dp.re * z.im + dp.im * z.re + p.im;
            dp.re = a;
            dp.im = b;
            a = p.re * z.re - p.im * z.im + c_[m];
            b = p.re * z.im + p.im * z.re;
            p.re = a;
            p.im = b;
        }
    }

    static void div(const Mc& a, const Mc& b, Mc& out, mpf_class& den)
    {
        den = b.re * b.re + b.im * b.im;
        mpf_class re = (a.re * b.re + a.im * b.im) / den;
        out.im = (a.im * b.re - a.re * b.im) / den;
        out.re = re;
    }

    // log2 of the largest term |c_i||z|^i
    double max_term(double lz) const
    {
        double best = -HUGE_VAL;
        for (std::size_t m = 0; m < log_c_.size(); ++m)
            best = std::max(best, log_c_[m] + static_cast<double>(m) * lz);
        return best + std::log2(static_cast<double>(log_c_.size()));
    }

    unsigned prec_;
    std::vector<mpf_class> c_;
    std::vector<double> log_c_;
};

constexpr unsigned kStartPrec = 128;
constexpr unsigned kMaxPrec = 8192;

}  // namespace

int RootSet::count() const noexcept
{
    int n = 0;
    for (const auto& r : roots)
        n += r.multiplicity;
    return n;
}

double residual(const ComplexPoly& p, cplx z) noexcept
{
    if (p.is_zero())
        return 0.0;
    return scaled_residual(p.coeffs(), z);
}

std::vector<double> residual_report(const ComplexPoly& p, std::span<const cplx> roots)
{
    std::vector<double> out;
    out.reserve(roots.size());
    for (const auto& z : roots)
        out.push_back(residual(p, z));
    return out;
}

RootSet find_roots(const ComplexPoly& p, const ToleranceConfig& cfg)
{
    if (p.degree() < 1)
        throw DegeneratePolynomial("find_roots needs a polynomial of degree >= 1");
    cfg.validate();

    RootSet out;
    out.source_degree = p.degree();
    const RawRoots raw = aberth(p.coeffs(), cfg);
    out.iterations = raw.iterations;

    std::vector<Root> roots = cluster(raw.z, raw.zeros);
    bool within_tol = true;
    for (auto& r : roots) {
        r.residual = residual(p, r.value);
        within_tol = within_tol && r.residual <= cfg.root_residual_tol;
    }
    out.roots = std::move(roots);
    out.converged = raw.stopped && within_tol;
    return out;
}

RootSet find_roots(const IntPoly& p, const ToleranceConfig& cfg)
{
    if (p.degree() < 1)
        throw DegeneratePolynomial("find_roots needs a polynomial of degree >= 1");
    cfg.validate();

    RootSet out;
    out.source_degree = p.degree();

    std::size_t zeros = 0;
    while (p[zeros] == 0)
        ++zeros;
    const std::vector<mpz_class> c(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end());
    if (c.size() == 1) {
        out.roots.push_back({cplx(0.0), 0.0, static_cast<int>(zeros)});
        out.converged = true;
        return out;
    }

    const RawRoots raw = aberth(to_complex_scaled(IntPoly(c)).poly.coeffs(), cfg);
    out.iterations = raw.iterations;

    const unsigned saved = static_cast<unsigned>(mpf_get_default_prec());
    std::vector<cplx> current = raw.z;
    std::vector<Mc> z;
    bool settled = false;
    unsigned prec = kStartPrec;
    for (; prec <= kMaxPrec && !settled; prec *= 2) {
        const MpAberth solver(c, prec);
        if (z.empty()) {
            for (const cplx& x : current)
                z.push_back({mpf_class(x.real()), mpf_class(x.imag())});
        } else {
            for (auto& x : z) {
                x.re.set_prec(prec);
                x.im.set_prec(prec);
            }
        }
        const bool stopped = solver.run(z, cfg.max_aberth_iters);
        std::vector<cplx> next;
        for (const auto& x : z)
            next.emplace_back(x.re.get_d(), x.im.get_d());
        bool same = prec > kStartPrec;
        for (std::size_t i = 0; i < next.size() && same; ++i)
            same = std::abs(next[i] - current[i]) <= 4.0 * kEps * std::max(1.0, std::abs(next[i]));
        settled = stopped && same;
        current = std::move(next);
    }

    std::vector<Root> roots = cluster(current, zeros);
    {
        const MpAberth solver(c, std::min(prec, kMaxPrec));
        bool within_tol = true;
        for (auto& r : roots) {
            r.residual = r.value == cplx(0.0) && zeros > 0 ? 0.0 : solver.residual(r.value);
            within_tol = within_tol && r.residual <= cfg.root_residual_tol;
        }
        out.converged = settled && within_tol;
    }
    mpf_set_default_prec(saved);
    out.roots = std::move(roots);
    return out;
}

}  // namespace tranroots
