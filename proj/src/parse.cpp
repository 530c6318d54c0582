#include "tranroots/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace tranroots {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

const char* describe(TokenKind k)
{
    switch (k) {
    case TokenKind::number: return "number";
    case TokenKind::variable: return "'z'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::caret: return "'^'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::end: return "end of input";
    }
    return "token";
}

// Scans an integer-or-decimal literal with optional exponent. Returns its length.
std::size_t scan_number(std::string_view s, std::size_t pos)
{
    std::size_t i = pos;
    while (i < s.size() && is_digit(s[i]))
        ++i;
    const bool int_digits = i > pos;
    bool frac_digits = false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        const std::size_t f = i;
        while (i < s.size() && is_digit(s[i]))
            ++i;
        frac_digits = i > f;
    }
    if (!int_digits && !frac_digits)
        throw SyntaxError(pos, "malformed number");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-'))
            ++j;
        const std::size_t e = j;
        while (j < s.size() && is_digit(s[j]))
            ++j;
        if (j == e)
            throw SyntaxError(j, "expected exponent digits");
        i = j;
    }
    return i - pos;
}

bool is_integer_literal(std::string_view lexeme)
{
    for (char c : lexeme)
        if (!is_digit(c))
            return false;
    return true;
}

template <class T>
T literal_value(const Token& t);

template <>
mpz_class literal_value<mpz_class>(const Token& t)
{
    return mpz_class(t.lexeme, 10);
}

template <>
cplx literal_value<cplx>(const Token& t)
{
    double v = 0.0;
    const char* first = t.lexeme.data();
    const char* last = first + t.lexeme.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range || (ptr == last && !std::isfinite(v)))
        throw SyntaxError(t.position, "number out of range");
    if (ec != std::errc() || ptr != last)
        throw SyntaxError(t.position, "malformed number");
    return {v, 0.0};
}

template <class T>
class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    DensePoly<T> parse()
    {
        DensePoly<T> p = expression();
        if (peek().kind != TokenKind::end)
            fail("expected operator or end of input");
        return p;
    }

private:
    using P = DensePoly<T>;

    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw SyntaxError(peek().position, what + ", found " + describe(peek().kind));
    }

    static void guard(int degree, std::size_t at)
    {
        if (degree > kMaxParsedDegree)
            throw ExpansionLimit("expansion at offset " + std::to_string(at) + " exceeds degree "
                                 + std::to_string(kMaxParsedDegree));
    }

    // Leading unary signs in front of a term.
    bool signs()
    {
        bool neg = false;
        while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus)
            neg ^= take().kind == TokenKind::minus;
        return neg;
    }

    P expression()
    {
        P acc = signs() ? -term() : term();
        while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
            const bool minus = take().kind == TokenKind::minus;
            const bool neg = signs() ^ minus;
            P t = term();
            acc = neg ? acc - t : acc + t;
        }
        return acc;
    }

    static bool starts_factor(TokenKind k)
    {
        return k == TokenKind::number || k == TokenKind::variable || k == TokenKind::lparen;
    }

    P term()
    {
        P acc = factor();
        for (;;) {
            const std::size_t at = peek().position;
            if (peek().kind == TokenKind::star) {
                take();
                if (!starts_factor(peek().kind))
                    fail("expected number, 'z' or '('");
            } else if (peek().kind != TokenKind::variable && peek().kind != TokenKind::lparen) {
                // a bare number after a factor ("z 2") is not implicit multiplication
                if (peek().kind == TokenKind::number)
                    fail("expected operator");
                break;
            }
            P f = factor();
            if (!acc.is_zero() && !f.is_zero())
                guard(acc.degree() + f.degree(), at);
            acc = acc * f;
        }
        return acc;
    }

    P factor()
    {
        P base = atom();
        if (peek().kind != TokenKind::caret)
            return base;
        const std::size_t caret_at = take().position;
        const Token& e = peek();
        if (e.kind == TokenKind::minus || e.kind == TokenKind::variable || e.kind == TokenKind::lparen)
            throw InvalidExponent("exponent at offset " + std::to_string(e.position)
                                  + " must be a nonnegative integer literal");
        if (e.kind != TokenKind::number)
            fail("expected integer exponent");
        if (!is_integer_literal(e.lexeme))
            throw InvalidExponent("exponent '" + e.lexeme + "' at offset "
                                  + std::to_string(e.position)
                                  + " must be a nonnegative integer literal");
        take();
        const mpz_class exp(e.lexeme, 10);
        if (base.degree() > 0) {
            if (exp > kMaxParsedDegree || base.degree() * exp > kMaxParsedDegree)
                guard(kMaxParsedDegree + 1, caret_at);
        } else if (exp > 65536 && !is_unit_or_zero(base)) {
            throw ExpansionLimit("exponent at offset " + std::to_string(e.position) + " is too large");
        }
        if (!exp.fits_slong_p())
            return is_unit_or_zero(base) ? pow(base, exp.get_ui() % 2 + 2) : base;
        return pow(base, exp.get_si());
    }

    static bool is_unit_or_zero(const P& p)
    {
        if (p.is_zero())
            return true;
        return p.degree() == 0 && (p[0] == T(1) || p[0] == T(-1));
    }

    P atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::number:
            take();
            return P::constant(literal_value<T>(t));
        case TokenKind::variable:
            take();
            return P::monomial(T(1), 1);
        case TokenKind::lparen: {
            take();
            if (++depth_ > kMaxDepth)
                fail("expressions nested too deeply");
            P inner = expression();
            --depth_;
            if (peek().kind != TokenKind::rparen)
                fail("expected ')'");
            take();
            return inner;
        }
        default:
            fail("expected number, 'z' or '('");
        }
    }

    static constexpr int kMaxDepth = 256;

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

std::string format_integer_coeff(const mpz_class& c) { return c.get_str(); }

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_complex_coeff(const cplx& c)
{
    if (c.imag() == 0.0)
        return format_double(c.real());
    std::string s = "(" + format_double(c.real());
    s += c.imag() < 0 ? "-" : "+";
    s += format_double(std::abs(c.imag())) + "i)";
    return s;
}

std::string monomial(int power)
{
    if (power == 0)
        return "";
    if (power == 1)
        return "z";
    return "z^" + std::to_string(power);
}

// Shared layout: magnitude text per term, sign handled separately.
template <class Term>
std::string join_terms(int degree, Term term)
{
    std::string out;
    for (int i = degree; i >= 0; --i) {
        auto [skip, negative, body] = term(i);
        if (skip)
            continue;
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        auto single = [&](TokenKind k) {
            out.push_back({k, std::string(1, c), i});
            ++i;
        };
        switch (c) {
        case '+': single(TokenKind::plus); continue;
        case '-': single(TokenKind::minus); continue;
        case '*': single(TokenKind::star); continue;
        case '^': single(TokenKind::caret); continue;
        case '(': single(TokenKind::lparen); continue;
        case ')': single(TokenKind::rparen); continue;
        case 'z': single(TokenKind::variable); continue;
        default: break;
        }
        if (is_digit(c) || c == '.') {
            const std::size_t len = scan_number(text, i);
            out.push_back({TokenKind::number, std::string(text.substr(i, len)), i});
            i += len;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            throw SyntaxError(i, std::string("unknown identifier '") + c + "', only 'z' is accepted");
        throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({TokenKind::end, "", text.size()});
    return out;
}

Poly parse_poly(std::string_view text)
{
    const auto tokens = tokenize(text);
    if (tokens.front().kind == TokenKind::end)
        throw SyntaxError(0, "expected expression, found end of input");
    bool exact = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        // exponent literals do not decide the domain
        if (tokens[i].kind == TokenKind::number && !is_integer_literal(tokens[i].lexeme)
            && !(i > 0 && tokens[i - 1].kind == TokenKind::caret))
            exact = false;
    }
    if (exact)
        return Parser<mpz_class>(tokens).parse();
    return Parser<cplx>(tokens).parse();
}

std::string format_poly(const IntPoly& p)
{
    return join_terms(p.degree(), [&](int i) {
        const mpz_class& c = p[static_cast<std::size_t>(i)];
        struct R {
            bool skip;
            bool negative;
            std::string body;
        };
        if (c == 0)
            return R{true, false, {}};
        const mpz_class mag = abs(c);
        std::string body = (mag == 1 && i > 0) ? monomial(i) : format_integer_coeff(mag) + monomial(i);
        return R{false, c < 0, std::move(body)};
    });
}

std::string format_poly(const ComplexPoly& p)
{
    return join_terms(p.degree(), [&](int i) {
        const cplx& c = p[static_cast<std::size_t>(i)];
        struct R {
            bool skip;
            bool negative;
            std::string body;
        };
        if (c == cplx(0.0))
            return R{true, false, {}};
        if (c.imag() != 0.0)
            return R{false, false, format_complex_coeff(c) + monomial(i)};
        const double mag = std::abs(c.real());
        std::string body = (mag == 1.0 && i > 0) ? monomial(i) : format_double(mag) + monomial(i);
        return R{false, c.real() < 0, std::move(body)};
    });
}

std::string format_poly(const Poly& p)
{
    return std::visit([](const auto& a) { return format_poly(a); }, p);
}

}  // namespace tranroots
