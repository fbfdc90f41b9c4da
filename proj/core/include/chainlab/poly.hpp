#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainlab/rational.hpp"

namespace chainlab {

/// Kinds of polynomial indeterminates. The declaration order is also the
/// lexicographic priority used for leading terms and GCD main variables.
enum class VarKind : std::uint8_t {
  X,        // independent variable
  U,        // jet u^(index)
  Zeta,     // jet zeta^(index) of the similarity variable
  V,        // nonlocal variable v itself
  ExpV,     // exp(v / index)
  ExpX,     // exp(x / index)
  CFun,     // c^(index), derivative tower of the arbitrary c(x)
  Param,    // integration constant k_index
  ConstC,   // free constant C
};

struct Var {
  VarKind kind = VarKind::X;
  int index = 0;

  friend auto operator<=>(const Var&, const Var&) = default;

  static constexpr Var x() { return {VarKind::X, 0}; }
  static constexpr Var u(int order = 0) { return {VarKind::U, order}; }
  static constexpr Var zeta(int order = 0) { return {VarKind::Zeta, order}; }
  static constexpr Var v() { return {VarKind::V, 0}; }
  static constexpr Var c(int order = 0) { return {VarKind::CFun, order}; }
  static constexpr Var param(int i) { return {VarKind::Param, i}; }
  static constexpr Var constantC() { return {VarKind::ConstC, 0}; }

  std::string name() const;
};

/// Power product of variables with positive exponents; the empty product is 1.
class Monomial {
 public:
  using Factor = std::pair<Var, int>;

  Monomial() = default;
  explicit Monomial(Var v, int exponent = 1);
  /// Merges repeated variables and drops zero exponents.
  static Monomial fromFactors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool isOne() const { return factors_.empty(); }
  int degree(Var v) const;
  int totalDegree() const;

  Monomial operator*(const Monomial& other) const;
  std::optional<Monomial> dividedBy(const Monomial& other) const;
  Monomial without(Var v) const;
  Monomial withDegree(Var v, int exponent) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by Var, exponents > 0
};

Monomial gcd(const Monomial& a, const Monomial& b);

/// Pure lexicographic order (variables earlier in VarKind order dominate).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored, so structural equality is equality.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c);             // NOLINT(google-explicit-constructor)
  static Poly variable(Var v, int exponent = 1);
  static Poly term(const Rational& c, Monomial m);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  bool isMonomial() const { return terms_.size() == 1; }
  std::optional<Rational> constantValue() const;
  Rational coefficient(const Monomial& m) const;

  /// Leading term under MonomialOrder. Precondition: nonzero.
  const std::pair<const Monomial, Rational>& leadingTerm() const;
  const Rational& leadingCoefficient() const { return leadingTerm().second; }

  int degree(Var v) const;
  int totalDegree() const;
  bool contains(Var v) const;
  std::vector<Var> variables() const;
  /// Largest monomial dividing every term.
  Monomial monomialContent() const;

  Poly derivative(Var v) const;
  Poly substitute(Var v, const Poly& value) const;
  Poly substitute(const std::map<Var, Poly>& values) const;
  Rational evaluate(const std::map<Var, Rational>& values) const;
  /// Coefficients with respect to v: result[k] is the coefficient of v^k.
  std::map<int, Poly> coefficientsIn(Var v) const;

  Poly pow(unsigned exponent) const;
  Poly monic() const;
  /// Exact quotient if `divisor` divides *this, otherwise nullopt.
  std::optional<Poly> dividedBy(const Poly& divisor) const;
  Poly dividedBy(const Monomial& m) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly&, const Poly&) = default;

  void addTerm(const Monomial& m, const Rational& c);
  std::string toString() const;

 private:
  Terms terms_;
};

/// Monic greatest common divisor over Q (primitive remainder sequences on a
/// recursive representation). gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Real roots and related queries for polynomials in the single variable x.
namespace univariate {

/// Squarefree part p / gcd(p, p').
Poly squarefree(const Poly& p, Var v);
/// Number of distinct real roots in the half-open interval (lo, hi].
int sturmCount(const Poly& p, Var v, const Rational& lo, const Rational& hi);

}  // namespace univariate

}  // namespace chainlab
