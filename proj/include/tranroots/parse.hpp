#ifndef TRANROOTS_PARSE_HPP
#define TRANROOTS_PARSE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tranroots/poly.hpp"

namespace tranroots {

enum class TokenKind { number, variable, plus, minus, star, caret, lparen, rparen, end };

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;  // byte offset into the source text
};

// Splits polynomial text into tokens. The stream always ends with TokenKind::end.
// Throws SyntaxError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view text);

// Largest degree an expanded expression may reach.
inline constexpr int kMaxParsedDegree = 10000;

/*
 * Parses an infix polynomial in z:
 *
 *   expression = [+|-] term { (+|-) [+|-] term }
 *   term       = factor { [*] factor }
 *   factor     = atom [ ^ integer ]
 *   atom       = number | z | ( expression )
 *
 * Juxtaposition multiplies ("2z", "3(z+1)", "(z+1)(z-1)"). The result is an
 * IntPoly when every literal is an integer and a ComplexPoly as soon as a
 * decimal or exponent-notation literal appears.
 */
Poly parse_poly(std::string_view text);

// Descending powers with explicit signs, e.g. "-19z^21 + 492z^20 - 7".
std::string format_poly(const IntPoly& p);
std::string format_poly(const ComplexPoly& p);
std::string format_poly(const Poly& p);

}  // namespace tranroots

#endif  // TRANROOTS_PARSE_HPP
