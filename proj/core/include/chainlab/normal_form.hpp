#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainlab/expr.hpp"
#include "chainlab/poly.hpp"

namespace chainlab {

/// Reduced quotient of polynomials: gcd(num, den) = 1 and den has leading
/// coefficient 1, so equal functions have equal representations.
class RationalFunction {
 public:
  RationalFunction() : den_(1L) {}
  RationalFunction(Poly num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Poly num, Poly den);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isPolynomial() const { return den_.isConstant(); }

  RationalFunction inverse() const;
  RationalFunction pow(long exponent) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  std::string toString() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

/// Bases registered as strictly positive; only these may carry
/// half-integer powers. Positive rational constants are implicitly positive.
class Assumptions {
 public:
  Assumptions() = default;
  Assumptions& assumePositive(const Expr& base) {
    positive_.push_back(base);
    return *this;
  }
  const std::vector<Expr>& positive() const { return positive_; }

 private:
  std::vector<Expr> positive_;
};

/// Bases of half-integer powers in e, registered as positive.
Assumptions radicandAssumptions(const Expr& e);

/// a + b * sqrt(B) with a, b, B rational functions over the canonical
/// variables (exp(v/L) and exp(x/L) enter as polynomial generators).
/// The radicand is assumed not to be a perfect square.
struct NormalForm {
  RationalFunction rational;
  RationalFunction radicalCoefficient;
  std::optional<RationalFunction> radicand;

  bool isZero() const { return rational.isZero() && radicalCoefficient.isZero(); }
};

/// Canonicalizes an expression of the supported class: rational functions
/// in x, jets, c^(d), k_i, C, v and exp(a*v + b*x) (a, b rational), with at
/// most one square-root radicand. Throws UnsupportedExpression otherwise.
NormalForm canonicalize(const Expr& e, const Assumptions& assumptions = {});

bool isZero(const Expr& e, const Assumptions& assumptions = {});
bool equivalent(const Expr& a, const Expr& b, const Assumptions& assumptions = {});

/// Canonical expanded expression (numerator over denominator).
Expr simplify(const Expr& e, const Assumptions& assumptions = {});

Expr toExpr(const Poly& p);
Expr toExpr(const RationalFunction& r);
Expr toExpr(const NormalForm& n);

}  // namespace chainlab
