#pragma once

#include <string>
#include <vector>

#include "chainlab/poly.hpp"

namespace chainlab {

class Expr;

/// Dependent variable owning a jet tower.
enum class Dependent { U, Zeta };

inline Var jetVar(Dependent dep, int order) {
  return dep == Dependent::U ? Var::u(order) : Var::zeta(order);
}

/// Monomial in jet variables only (u^(k) and zeta^(k)).
using JetMonomial = Monomial;

/// Polynomial in the jet variables u, u', u'', ... (and optionally the zeta
/// tower) with exact rational coefficients. Canonical: equal iff same terms.
class DiffPoly {
 public:
  DiffPoly() = default;
  DiffPoly(const Rational& c) : poly_(c) {}  // NOLINT(google-explicit-constructor)
  DiffPoly(long c) : poly_(c) {}             // NOLINT(google-explicit-constructor)
  /// Throws DomainError if `p` mentions a non-jet variable.
  explicit DiffPoly(Poly p);

  static DiffPoly jet(Dependent dep, int order, int exponent = 1);
  static DiffPoly u(int order = 0, int exponent = 1) { return jet(Dependent::U, order, exponent); }
  static DiffPoly zeta(int order = 0, int exponent = 1) { return jet(Dependent::Zeta, order, exponent); }
  /// Builds sum of coeff * prod u^(order)^exp from (coefficient, {(order, exponent)...}).
  struct TermSpec {
    long coefficient;
    std::vector<std::pair<int, int>> jets;
  };
  static DiffPoly fromTerms(const std::vector<TermSpec>& terms, Dependent dep = Dependent::U);

  const Poly& poly() const { return poly_; }
  const Poly::Terms& terms() const { return poly_.terms(); }
  std::size_t termCount() const { return poly_.size(); }
  bool isZero() const { return poly_.isZero(); }

  /// Highest jet order present for `dep`, or -1 if the tower is absent.
  int topOrder(Dependent dep = Dependent::U) const;
  Rational coefficient(const JetMonomial& m) const { return poly_.coefficient(m); }

  /// D_x: u^(k) -> u^(k+1), zeta^(k) -> zeta^(k+1), Leibniz on products.
  DiffPoly totalDerivative() const;
  DiffPoly partial(Dependent dep, int order) const;
  DiffPoly substitute(Dependent dep, int order, const DiffPoly& value) const;
  /// Replaces the `from` tower by the `to` tower order by order.
  DiffPoly renamed(Dependent from, Dependent to) const;
  DiffPoly pow(unsigned e) const { return DiffPoly(poly_.pow(e)); }

  DiffPoly& operator+=(const DiffPoly& o) { poly_ += o.poly_; return *this; }
  DiffPoly& operator-=(const DiffPoly& o) { poly_ -= o.poly_; return *this; }
  DiffPoly& operator*=(const DiffPoly& o) { poly_ *= o.poly_; return *this; }
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(DiffPoly a, const DiffPoly& b) { return a *= b; }
  friend DiffPoly operator-(const DiffPoly& a) { return DiffPoly(-a.poly_); }
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

  Expr toExpr() const;

 private:
  Poly poly_;
};

/// Weight of a jet monomial under wt(u^(k)) = m*k + 1 (the isobaric grading
/// scaled by m to stay integral).
int scaledWeight(const JetMonomial& m, int exponent);

/// Monomials ordered for display: highest jet order first, then higher total
/// degree, then lexicographic.
std::vector<std::pair<JetMonomial, Rational>> displayOrder(const DiffPoly& p);

/// Plain text such as "u_xx + 3*u*u_x + u^3".
std::string toText(const DiffPoly& p);
/// LaTeX such as "u_{xx} + 3 u u_{x} + u^{3}".
std::string toLatex(const DiffPoly& p);

}  // namespace chainlab
