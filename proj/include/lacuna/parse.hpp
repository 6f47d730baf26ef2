#pragma once

#include <string_view>

#include "lacuna/poly.hpp"

namespace lacuna {

/// Largest exponent / degree accepted by the parser.
inline constexpr int kMaxParsedDegree = 10000;

/// Parses either a JSON coefficient document or a polynomial expression.
///
/// JSON forms (ascending coefficients):
///   [[re, im], ...]                          integers or "p/q" strings stay exact,
///                                            any non-integer number switches to float
///   {"coeffs":   [[re_num, re_den, im_num, im_den], ...]}   exact
///   {"coeffs_f": [[re, im], ...]}                            float
///
/// Expression grammar (whitespace ignored, juxtaposition multiplies):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/')? unary)*      division only by constants
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' digits)?
///   primary := number | 'z' | 'i' | '(' expr ')'
///   number  := digits ('.' digits)? (('e' | 'E') ('+' | '-')? digits)?
/// Decimal literals are read exactly, so expressions always produce exact
/// polynomials.
ComplexPoly parse_poly(std::string_view text);

}  // namespace lacuna
