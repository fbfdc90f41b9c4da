#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "chainlab/poly.hpp"

namespace chainlab {

struct ExprNode;

/// Symbols reuse the polynomial variable identities: x, u^(k), zeta^(k), v,
/// c^(d), k_i and C. ExpV/ExpX are internal to canonical forms and never
/// appear as Expr symbols.
using Symbol = Var;

/// Immutable expression tree. Constructors apply only local tidying
/// (flattening, constant folding, dropping neutral elements); canonical
/// forms come from simplify()/isZero() in normal_form.hpp.
class Expr {
 public:
  enum class Kind : std::uint8_t { Constant, Symbol, Sum, Product, Power, Exp };

  Expr();  // the constant 0
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c);             // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(static_cast<long>(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(Symbol s);           // NOLINT(google-explicit-constructor)

  static Expr constant(const Rational& c) { return Expr(c); }
  static Expr symbol(Symbol s) { return Expr(s); }
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  /// Exponent must be an integer or a half-integer.
  static Expr power(const Expr& base, const Rational& exponent);
  static Expr exp(const Expr& argument);

  Kind kind() const;
  const Rational& value() const;     // Constant
  Symbol symbol() const;             // Symbol
  const std::vector<Expr>& operands() const;  // Sum, Product, Power (base), Exp (argument)
  const Rational& exponent() const;  // Power

  bool isConstant() const { return kind() == Kind::Constant; }
  bool isZero() const { return isConstant() && value() == 0; }
  bool isOne() const { return isConstant() && value() == 1; }

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return product({a, power(b, Rational(-1))}); }
  friend Expr operator-(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

Expr pow(const Expr& base, long exponent);
Expr sqrt(const Expr& base);

/// Partial derivative. The c^(d) tower depends on x: d c^(d)/dx = c^(d+1).
Expr diff(const Expr& e, Symbol s);

/// Total x-derivative on the covering system v_x = flux:
/// D_x = d/dx + sum_k u^(k+1) d/du^(k) + sum_k zeta^(k+1) d/dzeta^(k) + flux d/dv.
Expr coveringTotalDerivative(const Expr& e, const Expr& flux);

/// Ordinary total derivative; throws DomainError if e depends on v.
Expr totalDerivative(const Expr& e);

Expr substitute(const Expr& e, const std::map<Symbol, Expr>& values);

std::set<Symbol> symbols(const Expr& e);
bool dependsOn(const Expr& e, Symbol s);
/// Highest d such that c^(d) occurs, or -1.
int maxCDerivative(const Expr& e);

/// Replaces every c^(d) by the d-th x-derivative of `c`.
Expr specializeC(const Expr& e, const Expr& c);

/// Text form; expressions over x alone re-parse to an identical tree.
std::string toText(const Expr& e);
std::string toLatex(const Expr& e);

}  // namespace chainlab
