#include "tranroots/gpoly.hpp"

#include <algorithm>
#include <cmath>

#include "tranroots/rootfind.hpp"

namespace tranroots {

namespace {

std::size_t max_bits(const IntPoly& p)
{
    std::size_t b = 0;
    for (const auto& c : p.coeffs())
        b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
    return b;
}

// Sign variations of the sequence evaluated at x, zeros skipped.
template <class SignOf>
int variations(const std::vector<IntPoly>& seq, SignOf sign_of)
{
    int count = 0, last = 0;
    for (const auto& q : seq) {
        const int s = sign_of(q);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

// Power of two above every root magnitude of p (Cauchy bound rounded up).
double root_radius(const IntPoly& p)
{
    const long lead_bits = static_cast<long>(mpz_sizeinbase(p.leading().get_mpz_t(), 2));
    const long top_bits = static_cast<long>(max_bits(p));
    const long e = std::max<long>(1, top_bits - lead_bits + 2);
    return std::ldexp(1.0, static_cast<int>(std::min<long>(e, 1020)));
}

// Roots of a squarefree factor in (-radius, 0), each bracketed by a sign change.
struct Bracket {
    double lo, hi;
};

void isolate(const std::vector<IntPoly>& seq, double lo, double hi, int count, std::vector<Bracket>& out,
             int depth)
{
    if (count <= 0)
        return;
    const double mid = 0.5 * (lo + hi);
    if (count == 1 || depth > 1100 || mid <= lo || mid >= hi) {
        out.push_back({lo, hi});
        return;
    }
    if (sign_at(seq.front(), mid) == 0) {
        // an exact dyadic root; split around it so every bracket stays root-free at its ends
        const double left = std::nextafter(mid, lo), right = std::nextafter(mid, hi);
        isolate(seq, lo, left, sturm_count(seq, lo, left), out, depth + 1);
        out.push_back({mid, mid});
        isolate(seq, right, hi, sturm_count(seq, right, hi), out, depth + 1);
        return;
    }
    const int left = sturm_count(seq, lo, mid);
    isolate(seq, lo, mid, left, out, depth + 1);
    isolate(seq, mid, hi, count - left, out, depth + 1);
}

// Shrinks [lo, hi] around a simple root of p until hi - lo <= rel·min(|lo|, |hi|).
double refine(const IntPoly& p, double lo, double hi, double rel)
{
    if (lo == hi)
        return lo;
    const int s_lo = sign_at(p, lo);
    while (hi - lo > rel * std::min(std::abs(lo), std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const int s = sign_at(p, mid);
        if (s == 0)
            return mid;
        (s == s_lo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

IntPoly strip_zero_roots(const IntPoly& p, int& zeros)
{
    zeros = 0;
    while (p[static_cast<std::size_t>(zeros)] == 0)
        ++zeros;
    return IntPoly(std::vector<mpz_class>(p.coeffs().begin() + zeros, p.coeffs().end()));
}

// Floating proposal checked by exact signs; false when the proposal does not certify.
bool certify_by_alternation(const IntPoly& h, double tol, std::vector<double>& roots)
{
    const int d = h.degree();
    const RootSet rs = find_roots(to_complex_scaled(h).poly);
    if (rs.count() != d)
        return false;
    std::vector<double> r;
    for (const auto& root : rs.roots) {
        if (root.multiplicity != 1 || root.value.real() >= 0.0
            || std::abs(root.value.imag()) > 1e-6 * std::abs(root.value))
            return false;
        r.push_back(root.value.real());
    }
    std::sort(r.begin(), r.end());

    std::vector<double> sep(static_cast<std::size_t>(d) + 1);
    std::vector<int> sign(static_cast<std::size_t>(d) + 1);
    sign[0] = sign_at_neg_infinity(h);
    sep[0] = -HUGE_VAL;
    for (int i = 1; i < d; ++i) {
        const double s = -std::sqrt(r[i - 1] * r[i]);
        if (!(r[i - 1] < s && s < r[i]))
            return false;
        sep[i] = s;
    }
    sep[d] = 0.0;
    for (int i = 1; i <= d; ++i) {
        sign[i] = i == d ? sgn(h[0]) : sign_at(h, sep[i]);
        if (sign[i] == 0 || sign[i] != -sign[i - 1])
            return false;
    }

    const double radius = root_radius(h);
    roots.clear();
    for (int i = 0; i < d; ++i) {
        const double x = r[i];
        const double half = 0.5 * tol * std::abs(x);
        double lo = std::max(x - half, i == 0 ? -radius : sep[i]);
        double hi = std::min(x + half, sep[i + 1]);
        if (lo < hi && sign_at(h, lo) == sign[i] && sign_at(h, hi) == sign[i + 1]) {
            roots.push_back(x);
            continue;
        }
        lo = i == 0 ? -radius : sep[i];
        hi = sep[i + 1];
        roots.push_back(refine(h, lo, hi, tol));
    }
    return true;
}

// Yun squarefree decomposition: p = Π factors[m]^(m+1), up to a constant.
std::vector<IntPoly> squarefree_factors(const IntPoly& p)
{
    std::vector<IntPoly> out;
    const IntPoly dp = derivative(p);
    const IntPoly a0 = gcd(p, dp);
    IntPoly b = exact_quotient(p, a0);
    IntPoly c = exact_quotient(dp, a0);
    IntPoly d = c - derivative(b);
    while (b.degree() > 0) {
        const IntPoly a = d.is_zero() ? primitive_part(b) : gcd(b, d);
        out.push_back(a);
        b = exact_quotient(b, a);
        c = exact_quotient(d, a);
        d = c - derivative(b);
    }
    return out;
}

// True when every root of h is negative and simple.
bool certify_by_sturm(const IntPoly& h, double tol, std::vector<double>& roots, bool& ok_radius)
{
    roots.clear();
    int total = 0;
    const double radius = root_radius(h);
    ok_radius = std::isfinite(radius) && radius < std::ldexp(1.0, 1000);
    const auto factors = squarefree_factors(h);
    for (std::size_t m = 0; m < factors.size(); ++m) {
        const IntPoly& f = factors[m];
        if (f.degree() < 1)
            continue;
        const auto seq = sturm_sequence(f);
        const int count = variations(seq, [](const IntPoly& q) { return sign_at_neg_infinity(q); })
                          - variations(seq, [](const IntPoly& q) { return sgn(q[0]); });
        std::vector<Bracket> brackets;
        isolate(seq, -radius, 0.0, count, brackets, 0);
        for (const auto& br : brackets) {
            const double x = refine(f, br.lo, br.hi, tol);
            for (std::size_t rep = 0; rep <= m; ++rep)
                roots.push_back(x);
        }
        total += count * static_cast<int>(m + 1);
    }
    std::sort(roots.begin(), roots.end());
    return total == h.degree() && factors.size() == 1;
}

}  // namespace

GPoly g_poly(int ell, int k, int n)
{
    GPoly g;
    g.ell = ell;
    g.k = k;
    g.n = n;
    g.lattice = lattice_solutions(ell, k, n);
    std::vector<mpz_class> c;
    c.reserve(g.lattice.size());
    for (const auto& [i, j] : g.lattice.solutions)
        c.push_back(binomial(static_cast<unsigned long>(i + j), static_cast<unsigned long>(i)));
    g.coeffs = IntPoly(std::move(c));
    return g;
}

int sign_at_neg_infinity(const IntPoly& p)
{
    if (p.is_zero())
        return 0;
    const int s = sgn(p.leading());
    return p.degree() % 2 == 0 ? s : -s;
}

int sign_at(const IntPoly& p, double x)
{
    if (p.is_zero())
        return 0;
    if (!std::isfinite(x))
        throw InvalidArgument("sign_at needs a finite point");
    if (x == 0.0)
        return sgn(p[0]);

    // x = M·2^E with M an odd integer
    int e2 = 0;
    const double m = std::frexp(x, &e2);
    long long M = static_cast<long long>(std::ldexp(m, 53));
    long E = e2 - 53;
    while ((M & 1) == 0) {
        M >>= 1;
        ++E;
    }
    const mpz_class mz(static_cast<double>(M));
    const std::size_t d = static_cast<std::size_t>(p.degree());

    mpz_class acc = p.leading();
    if (E >= 0) {
        mpz_class xz = mz;
        xz <<= static_cast<mp_bitcnt_t>(E);
        for (std::size_t i = d; i-- > 0;)
            acc = acc * xz + p[i];
        return sgn(acc);
    }
    // Horner on p(M/2^q)·2^{q·d}
    const auto q = static_cast<mp_bitcnt_t>(-E);
    mpz_class term;
    for (std::size_t i = d; i-- > 0;) {
        acc *= mz;
        mpz_mul_2exp(term.get_mpz_t(), p[i].get_mpz_t(), q * (d - i));
        acc += term;
    }
    return sgn(acc);
}

std::vector<IntPoly> sturm_sequence(const IntPoly& p)
{
    std::vector<IntPoly> seq;
    if (p.is_zero())
        return seq;
    seq.push_back(p);
    IntPoly d = derivative(p);
    if (d.is_zero())
        return seq;
    seq.push_back(d);
    for (;;) {
        const IntPoly& a = seq[seq.size() - 2];
        const IntPoly& b = seq.back();
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero())
            break;
        // prem carries lc(b)^(δ+1); keep the Sturm sign convention -rem
        const int delta1 = a.degree() - b.degree() + 1;
        const bool flip = sgn(b.leading()) < 0 && delta1 % 2 == 1;
        mpz_class g = content(r);
        if (!flip)
            g = -g;
        std::vector<mpz_class> c(r.coeffs());
        for (auto& x : c)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        seq.emplace_back(std::move(c));
    }
    return seq;
}

int sturm_count(const std::vector<IntPoly>& seq, double a, double b)
{
    return variations(seq, [a](const IntPoly& q) { return sign_at(q, a); })
           - variations(seq, [b](const IntPoly& q) { return sign_at(q, b); });
}

int sturm_count_negative(const IntPoly& p)
{
    if (p.degree() < 1)
        return 0;
    int zeros = 0;
    const IntPoly h = strip_zero_roots(p, zeros);
    if (h.degree() < 1)
        return 0;
    const auto seq = sturm_sequence(h);
    return variations(seq, [](const IntPoly& q) { return sign_at_neg_infinity(q); })
           - variations(seq, [](const IntPoly& q) { return sgn(q[0]); });
}

NegativeRoots real_negative_roots(const IntPoly& g, double tol)
{
    if (g.degree() < 1)
        throw DegeneratePolynomial("real_negative_roots needs a polynomial of degree >= 1");
    if (!(tol > 0))
        throw InvalidArgument("real_negative_roots needs tol > 0");

    NegativeRoots out;
    int zeros = 0;
    const IntPoly h = strip_zero_roots(g, zeros);
    if (h.degree() < 1) {
        out.warning = "all roots are at 0";
        return out;
    }

    if (h.degree() > kExactIsolationMaxDegree || static_cast<long>(max_bits(h)) > kExactIsolationMaxBits) {
        const RootSet rs = find_roots(to_complex_scaled(h).poly);
        for (const auto& r : rs.roots)
            if (r.value.real() < 0.0 && std::abs(r.value.imag()) <= 1e-8 * std::abs(r.value))
                for (int m = 0; m < r.multiplicity; ++m)
                    out.roots.push_back(r.value.real());
        std::sort(out.roots.begin(), out.roots.end());
        out.warning = "polynomial too large for exact isolation; floating roots are not certified";
        return out;
    }

    if (certify_by_alternation(h, tol, out.roots)) {
        out.certified = zeros == 0;
        out.method = RootCertificate::sign_alternation;
        return out;
    }
    bool ok_radius = true;
    const bool all = certify_by_sturm(h, tol, out.roots, ok_radius);
    out.certified = all && zeros == 0 && ok_radius;
    out.method = RootCertificate::sturm;
    if (!ok_radius)
        out.warning = "root radius exceeds double range";
    return out;
}

NegativeRoots real_negative_roots(const GPoly& g, double tol) { return real_negative_roots(g.coeffs, tol); }

IntPoly factorized_form(const IntSpec& spec, int n)
{
    const LatticeSolutionSet L = lattice_solutions(spec.ell, spec.k, n);
    if (L.empty())
        return {};
    const GPoly g = g_poly(spec.ell, spec.k, n);
    const auto s = static_cast<int>(L.size());
    const auto [i1, j1] = L.first();
    const int js = L.solutions.back().j;

    IntPoly w = pow(spec.B, spec.k);  // (-1)^{k-ell} B^k
    if ((spec.k - spec.ell) % 2 != 0)
        w = -w;
    const IntPoly a_ell = pow(spec.A, spec.ell);

    // Horner in the homogeneous pair (w, A^ell)
    IntPoly acc = IntPoly::constant(g.coeffs[static_cast<std::size_t>(s - 1)]);
    for (int u = s - 2; u >= 0; --u)
        acc = acc * w + IntPoly::constant(g.coeffs[static_cast<std::size_t>(u)]) * pow(a_ell, s - 1 - u);
    // acc = Σ_u c_u w^u (A^ell)^{s-1-u}
    IntPoly out = acc * pow(spec.B, i1) * pow(spec.A, js);
    if ((i1 + j1) % 2 != 0)
        out = -out;
    return out;
}

}  // namespace tranroots
