#ifndef TRANROOTS_POLY_HPP
#define TRANROOTS_POLY_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "tranroots/errors.hpp"

namespace tranroots {

using cplx = std::complex<double>;

/*
 * Dense univariate polynomial, coefficients stored lowest power first.
 * The zero polynomial is the empty coefficient vector and has degree -1.
 * Every constructor and operation keeps the leading coefficient nonzero.
 */
template <class T>
class DensePoly {
public:
    using coeff_type = T;

    DensePoly() = default;
    explicit DensePoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    DensePoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static DensePoly constant(T value) { return DensePoly(std::vector<T>{std::move(value)}); }

    static DensePoly monomial(T value, int power)
    {
        std::vector<T> c(static_cast<std::size_t>(power) + 1, T(0));
        c.back() = std::move(value);
        return DensePoly(std::move(c));
    }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    const T& leading() const { return c_.back(); }

    // Coefficient of z^i, zero outside [0, degree].
    T coeff(int i) const
    {
        if (i < 0 || i > degree())
            return T(0);
        return c_[static_cast<std::size_t>(i)];
    }

    DensePoly operator-() const
    {
        std::vector<T> r(c_);
        for (auto& x : r)
            x = -x;
        return DensePoly(std::move(r));
    }

    DensePoly& operator+=(const DensePoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }

    DensePoly& operator-=(const DensePoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    DensePoly& operator*=(const T& s)
    {
        for (auto& x : c_)
            x *= s;
        trim();
        return *this;
    }

    friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
    friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
    friend DensePoly operator*(DensePoly a, const T& s) { return a *= s; }
    friend DensePoly operator*(const T& s, DensePoly a) { return a *= s; }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T(0))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return DensePoly(std::move(r));
    }

    DensePoly& operator*=(const DensePoly& o) { return *this = *this * o; }

    friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == T(0))
            c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = DensePoly<mpz_class>;
using ComplexPoly = DensePoly<cplx>;

// Square-and-multiply power; the exponent must be nonnegative.
template <class T>
DensePoly<T> pow(const DensePoly<T>& base, long exponent)
{
    if (exponent < 0)
        throw InvalidExponent("polynomial power requires a nonnegative exponent, got "
                              + std::to_string(exponent));
    DensePoly<T> result = DensePoly<T>::constant(T(1));
    DensePoly<T> b = base;
    while (exponent > 0) {
        if (exponent & 1)
            result *= b;
        exponent >>= 1;
        if (exponent > 0)
            b *= b;
    }
    return result;
}

// Polynomial in either coefficient domain, as produced by the parser.
using Poly = std::variant<IntPoly, ComplexPoly>;
using Scalar = std::variant<mpz_class, cplx>;

enum class ArithOp { add, sub, mul };

Poly arith(ArithOp op, const Poly& p, const Poly& q);
Poly scale(const Poly& p, const Scalar& s);
Poly pow(const Poly& p, long exponent);

bool is_exact(const Poly& p) noexcept;
int degree(const Poly& p) noexcept;

// Horner evaluation.
cplx eval(const ComplexPoly& p, cplx z) noexcept;

// Value and first derivative in one Horner pass.
std::pair<cplx, cplx> eval_with_derivative(const ComplexPoly& p, cplx z) noexcept;

// Σ|c_i|·max(1,|z|)^i, the magnitude scale used for relative residuals.
double eval_scale(const ComplexPoly& p, double abs_z) noexcept;

// 1 + max_{i<d} |c_i| / |c_d|.
double cauchy_root_bound(const ComplexPoly& p);

struct ComplexConversion {
    ComplexPoly poly;
    bool rounded = false;        // some coefficient was not exactly representable
    double max_rel_error = 0.0;  // largest per-coefficient relative rounding error
};

// Exact IntPoly -> ComplexPoly. Throws InvalidArgument when a coefficient
// exceeds the double range; use to_complex_scaled for root finding instead.
ComplexConversion to_complex(const IntPoly& p);

// Same as to_complex but divides every coefficient by 2^shift first so the
// largest one is O(1). Roots are unchanged.
ComplexConversion to_complex_scaled(const IntPoly& p, long* shift = nullptr);

ComplexPoly to_complex_poly(const Poly& p);

// Integer helpers used by exact root counting and factor stripping.
mpz_class content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
IntPoly derivative(const IntPoly& p);
ComplexPoly derivative(const ComplexPoly& p);

// lc(d)^(deg n - deg d + 1) · n mod d, computed without fractions.
IntPoly pseudo_remainder(const IntPoly& n, const IntPoly& d);

// n / d when d divides n over the integers; throws InvalidArgument otherwise.
IntPoly exact_quotient(const IntPoly& n, const IntPoly& d);

// Primitive gcd over Z[z] via the primitive remainder sequence. Positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

struct ToleranceConfig {
    double root_residual_tol = 1e-8;
    double curve_im_tol = 1e-6;
    double ab_exclusion_eps = 1e-9;
    int max_aberth_iters = 200;

    // Throws InvalidArgument on nonpositive tolerances or iteration count.
    void validate() const;
};

}  // namespace tranroots

#endif  // TRANROOTS_POLY_HPP
