#include "tranroots/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tranroots {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

[[noreturn]] void mismatch(const char* what)
{
    throw DomainMismatch(std::string(what) + ": operands are in different coefficient domains");
}

}  // namespace

Poly arith(ArithOp op, const Poly& p, const Poly& q)
{
    if (p.index() != q.index())
        mismatch("arith");
    return std::visit(
        [&](const auto& a) -> Poly {
            using P = std::decay_t<decltype(a)>;
            const auto& b = std::get<P>(q);
            switch (op) {
            case ArithOp::add: return a + b;
            case ArithOp::sub: return a - b;
            case ArithOp::mul: return a * b;
            }
            return P{};
        },
        p);
}

Poly scale(const Poly& p, const Scalar& s)
{
    if (p.index() != s.index())
        mismatch("scale");
    return std::visit(
        overloaded{
            [&](const IntPoly& a) -> Poly { return a * std::get<mpz_class>(s); },
            [&](const ComplexPoly& a) -> Poly { return a * std::get<cplx>(s); },
        },
        p);
}

Poly pow(const Poly& p, long exponent)
{
    return std::visit([&](const auto& a) -> Poly { return pow(a, exponent); }, p);
}

bool is_exact(const Poly& p) noexcept { return std::holds_alternative<IntPoly>(p); }

int degree(const Poly& p) noexcept
{
    return std::visit([](const auto& a) { return a.degree(); }, p);
}

cplx eval(const ComplexPoly& p, cplx z) noexcept
{
    cplx acc = 0.0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * z + c[i];
    return acc;
}

std::pair<cplx, cplx> eval_with_derivative(const ComplexPoly& p, cplx z) noexcept
{
    cplx v = 0.0, d = 0.0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + c[i];
    }
    return {v, d};
}

double eval_scale(const ComplexPoly& p, double abs_z) noexcept
{
    const double r = std::max(1.0, abs_z);
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * r + std::abs(c[i]);
    return acc;
}

double cauchy_root_bound(const ComplexPoly& p)
{
    if (p.degree() < 1)
        throw DegeneratePolynomial("cauchy_root_bound needs a polynomial of degree >= 1");
    const double lead = std::abs(p.leading());
    double m = 0.0;
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, std::abs(p[static_cast<std::size_t>(i)]));
    return 1.0 + m / lead;
}

namespace {

ComplexConversion convert(const IntPoly& p, long shift)
{
    ComplexConversion out;
    std::vector<cplx> c;
    c.reserve(p.size());
    for (const auto& x : p.coeffs()) {
        long exp = 0;
        const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
        const long e = exp - shift;
        if (e > std::numeric_limits<double>::max_exponent)
            throw InvalidArgument("integer coefficient exceeds double range");
        c.emplace_back(std::ldexp(mant, static_cast<int>(std::max<long>(e, -2000))), 0.0);

        // mpz_get_d_2exp truncates to 53 bits; record what was dropped.
        const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
        if (x != 0 && bits > 53 && mpz_scan1(x.get_mpz_t(), 0) < bits - 53) {
            mpz_class rem;
            mpz_tdiv_r_2exp(rem.get_mpz_t(), x.get_mpz_t(), bits - 53);
            long re = 0, xe = 0;
            const double rm = mpz_get_d_2exp(&re, rem.get_mpz_t());
            const double xm = mpz_get_d_2exp(&xe, x.get_mpz_t());
            out.rounded = true;
            out.max_rel_error = std::max(out.max_rel_error,
                                         std::abs(rm / xm) * std::ldexp(1.0, static_cast<int>(re - xe)));
        }
    }
    out.poly = ComplexPoly(std::move(c));
    return out;
}

}  // namespace

ComplexConversion to_complex(const IntPoly& p) { return convert(p, 0); }

ComplexConversion to_complex_scaled(const IntPoly& p, long* shift)
{
    long s = 0;
    for (const auto& x : p.coeffs())
        s = std::max<long>(s, static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2)));
    if (s < 512)
        s = 0;
    if (shift)
        *shift = s;
    return convert(p, s);
}

ComplexPoly to_complex_poly(const Poly& p)
{
    return std::visit(overloaded{
                          [](const IntPoly& a) { return to_complex(a).poly; },
                          [](const ComplexPoly& a) { return a; },
                      },
                      p);
}

mpz_class content(const IntPoly& p)
{
    mpz_class g = 0;
    for (const auto& x : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& p)
{
    if (p.is_zero())
        return p;
    mpz_class g = content(p);
    if (p.leading() < 0)
        g = -g;
    std::vector<mpz_class> c(p.coeffs());
    for (auto& x : c)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly derivative(const IntPoly& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<mpz_class> c(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        c[i - 1] = p[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(c));
}

ComplexPoly derivative(const ComplexPoly& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<cplx> c(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        c[i - 1] = p[i] * static_cast<double>(i);
    return ComplexPoly(std::move(c));
}

IntPoly pseudo_remainder(const IntPoly& n, const IntPoly& d)
{
    if (d.is_zero())
        throw InvalidArgument("pseudo_remainder by the zero polynomial");
    if (n.degree() < d.degree())
        return n;
    std::vector<mpz_class> r(n.coeffs());
    const auto dd = static_cast<std::size_t>(d.degree());
    const mpz_class& lc = d.leading();
    for (std::size_t top = r.size(); top-- > dd;) {
        const mpz_class q = r[top];
        for (std::size_t i = 0; i < top; ++i)
            r[i] *= lc;
        if (q != 0) {
            const std::size_t off = top - dd;
            for (std::size_t i = 0; i < dd; ++i)
                r[off + i] -= q * d[i];
        }
        r[top] = 0;
    }
    r.resize(dd);
    return IntPoly(std::move(r));
}

IntPoly exact_quotient(const IntPoly& n, const IntPoly& d)
{
    if (d.is_zero())
        throw InvalidArgument("exact_quotient by the zero polynomial");
    if (n.is_zero())
        return {};
    if (n.degree() < d.degree())
        throw InvalidArgument("exact_quotient: divisor does not divide dividend");
    std::vector<mpz_class> r(n.coeffs());
    const auto dd = static_cast<std::size_t>(d.degree());
    std::vector<mpz_class> q(r.size() - dd);
    for (std::size_t k = q.size(); k-- > 0;) {
        mpz_class& top = r[k + dd];
        if (!mpz_divisible_p(top.get_mpz_t(), d.leading().get_mpz_t()))
            throw InvalidArgument("exact_quotient: divisor does not divide dividend");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), d.leading().get_mpz_t());
        for (std::size_t i = 0; i <= dd; ++i)
            r[k + i] -= q[k] * d[i];
    }
    for (std::size_t i = 0; i < dd; ++i)
        if (r[i] != 0)
            throw InvalidArgument("exact_quotient: divisor does not divide dividend");
    return IntPoly(std::move(q));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b)
{
    IntPoly x = primitive_part(a);
    IntPoly y = primitive_part(b);
    if (x.degree() < y.degree())
        std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = primitive_part(pseudo_remainder(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

void ToleranceConfig::validate() const
{
    if (!(root_residual_tol > 0) || !(curve_im_tol > 0) || !(ab_exclusion_eps > 0))
        throw InvalidArgument("tolerances must be strictly positive");
    if (max_aberth_iters < 1)
        throw InvalidArgument("max_aberth_iters must be >= 1");
}

}  // namespace tranroots
