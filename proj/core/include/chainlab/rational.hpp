#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chainlab {

/// Exact rational number, always in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Parses "n" or "n/d" (optional leading sign). Decimal notation is rejected.
/// Throws DomainError on malformed input or a zero denominator.
Rational parseRational(std::string_view text);

std::string toString(const Rational& q);

/// n/d in lowest terms; d must be nonzero.
inline Rational ratio(long n, long d) {
  Rational q{mpz_class(n), mpz_class(d)};
  q.canonicalize();
  return q;
}

inline bool isInteger(const Rational& q) { return q.get_den() == 1; }

/// Exact power; negative exponents invert (throws DomainError on 0^-n).
Rational pow(const Rational& base, long exponent);

}  // namespace chainlab
