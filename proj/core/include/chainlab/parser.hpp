#pragma once

#include <string_view>

#include "chainlab/expr.hpp"

namespace chainlab {

/// Parses the expression grammar used for user-supplied c(x):
///
///   expr     := term (('+' | '-') term)*
///   term     := unary (('*' | '/') unary)*
///   unary    := '-' unary | power
///   power    := primary ('^' exponent)?
///   exponent := '-' exponent | power        (must fold to a rational constant)
///   primary  := integer | 'x' | 'exp' '(' expr ')' | '(' expr ')'
///
/// Whitespace is ignored. Decimal literals are rejected. Throws SyntaxError
/// carrying the byte offset of the offending token and the expected tokens.
Expr parseExpression(std::string_view source);

}  // namespace chainlab
