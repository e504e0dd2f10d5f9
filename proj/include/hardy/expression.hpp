#pragma once

#include <string>
#include <string_view>

#include "hardy/rational.hpp"

namespace hardy {

// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number ['i'] | 'i' | 'z' | '(' expr ')'
// Numbers are decimal or scientific reals; a trailing 'i' makes them
// imaginary, so `a+bi` reads as a complex literal. Exponents are
// nonnegative integers. Throws SyntaxError (with position) or
// ZeroDenominator.
RationalMap parse_map(std::string_view text, double coprime_tol = kDefaultCoprimeTol);

// Parses a constant expression such as "0.25" or "0.1-0.3i".
Complex parse_complex(std::string_view text);

// Shortest text that parses back to exactly the same canonical map.
std::string format_map(const RationalMap& map);
std::string format_complex(Complex c);

}  // namespace hardy
