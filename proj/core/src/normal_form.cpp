#include "chainlab/normal_form.hpp"

#include <numeric>

#include "chainlab/errors.hpp"

namespace chainlab {

// ------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(1L) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RationalFunction::normalize() {
  if (den_.isZero()) throw DomainError("rational function with zero denominator");
  if (num_.isZero()) {
    den_ = Poly(1L);
    return;
  }
  if (!den_.isConstant()) {
    const Poly g = gcd(num_, den_);
    if (!g.isConstant()) {
      num_ = *num_.dividedBy(g);
      den_ = *den_.dividedBy(g);
    }
  }
  const Rational lc = den_.leadingCoefficient();
  if (lc != 1) {
    const Poly scale(Rational(1 / lc));
    num_ *= scale;
    den_ *= scale;
  }
}

RationalFunction RationalFunction::inverse() const {
  if (num_.isZero()) throw DomainError("division by zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  RationalFunction out;
  out.num_ = num_.pow(static_cast<unsigned>(exponent));
  out.den_ = den_.pow(static_cast<unsigned>(exponent));
  return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  const Poly g = gcd(a.den_, b.den_);
  const Poly da = *a.den_.dividedBy(g);
  const Poly db = *b.den_.dividedBy(g);
  return RationalFunction(a.num_ * db + b.num_ * da, a.den_ * db);
}

RationalFunction operator-(const RationalFunction& a) {
  RationalFunction out = a;
  out.num_ = -out.num_;
  return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.isZero() || b.isZero()) return {};
  if (a.isPolynomial() && b.isPolynomial()) {
    return RationalFunction(a.num_ * b.num_ * Poly(Rational(1 / (a.den_.leadingCoefficient() * b.den_.leadingCoefficient()))));
  }
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

std::string RationalFunction::toString() const {
  if (den_.isConstant()) return num_.toString();
  return "(" + num_.toString() + ")/(" + den_.toString() + ")";
}

// ------------------------------------------------------------ NormalForm

namespace {

std::optional<RationalFunction> sharedRadicand(const NormalForm& a, const NormalForm& b) {
  const bool ha = !a.radicalCoefficient.isZero();
  const bool hb = !b.radicalCoefficient.isZero();
  if (ha && hb && *a.radicand != *b.radicand) {
    throw UnsupportedExpression("expression mixes two distinct square-root radicands: " + a.radicand->toString() +
                                " and " + b.radicand->toString());
  }
  if (ha) return a.radicand;
  if (hb) return b.radicand;
  return std::nullopt;
}

NormalForm tidy(NormalForm n) {
  if (n.radicalCoefficient.isZero()) n.radicand.reset();
  return n;
}

NormalForm add(const NormalForm& a, const NormalForm& b) {
  auto r = sharedRadicand(a, b);
  return tidy({a.rational + b.rational, a.radicalCoefficient + b.radicalCoefficient, r});
}

NormalForm multiply(const NormalForm& a, const NormalForm& b) {
  auto r = sharedRadicand(a, b);
  NormalForm out;
  out.rational = a.rational * b.rational;
  if (r) {
    out.rational = out.rational + a.radicalCoefficient * b.radicalCoefficient * *r;
    out.radicalCoefficient = a.rational * b.radicalCoefficient + a.radicalCoefficient * b.rational;
    out.radicand = r;
  }
  return tidy(std::move(out));
}

NormalForm inverse(const NormalForm& a) {
  if (a.radicalCoefficient.isZero()) return {a.rational.inverse(), {}, std::nullopt};
  const RationalFunction norm = a.rational * a.rational - a.radicalCoefficient * a.radicalCoefficient * *a.radicand;
  if (norm.isZero()) throw UnsupportedExpression("radicand is a perfect square: " + a.radicand->toString());
  const RationalFunction inv = norm.inverse();
  return tidy({a.rational * inv, -(a.radicalCoefficient * inv), a.radicand});
}

NormalForm power(const NormalForm& a, long n) {
  if (n < 0) return power(inverse(a), -n);
  NormalForm result{RationalFunction(Poly(1L)), {}, std::nullopt};
  NormalForm base = a;
  auto e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1UL) result = multiply(result, base);
    e >>= 1U;
    if (e != 0) base = multiply(base, base);
  }
  return result;
}

struct ExpCoefficients {
  Rational alongV;
  Rational alongX;
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const Assumptions& assumptions) : assumptions_(assumptions) {}

  NormalForm run(const Expr& e) {
    collectScales(e);
    for (const auto& b : assumptions_.positive()) collectScales(b);
    for (const auto& b : assumptions_.positive()) {
      NormalForm nb = convert(b);
      if (!nb.radicalCoefficient.isZero()) throw UnsupportedExpression("assumed-positive base carries a radical");
      positive_.push_back(nb.rational);
    }
    return convert(e);
  }

 private:
  static ExpCoefficients expCoefficients(const Expr& argument) {
    const NormalForm n = Canonicalizer(Assumptions{}).run(argument);
    const auto unsupported = [&] {
      return UnsupportedExpression("exp argument must be a*v + b*x with rational a, b: " + toText(argument));
    };
    if (!n.radicalCoefficient.isZero() || !n.rational.isPolynomial()) throw unsupported();
    ExpCoefficients out;
    const Poly& p = n.rational.numerator();
    for (const auto& [m, c] : p.terms()) {
      if (m.factors().size() != 1 || m.factors().front().second != 1) throw unsupported();
      const Var var = m.factors().front().first;
      if (var == Var::v()) {
        out.alongV = c;
      } else if (var == Var::x()) {
        out.alongX = c;
      } else {
        throw unsupported();
      }
    }
    return out;
  }

  void collectScales(const Expr& e) {
    if (e.kind() == Expr::Kind::Exp) {
      const ExpCoefficients k = expCoefficients(e.operands().front());
      scaleV_ = std::lcm(scaleV_, k.alongV.get_den().get_si());
      scaleX_ = std::lcm(scaleX_, k.alongX.get_den().get_si());
      return;
    }
    for (const auto& op : e.operands()) collectScales(op);
  }

  RationalFunction expGenerator(const Expr& argument) const {
    const ExpCoefficients k = expCoefficients(argument);
    std::vector<Monomial::Factor> num;
    std::vector<Monomial::Factor> den;
    const auto place = [&](VarKind kind, long scale, const Rational& coeff) {
      if (coeff == 0) return;
      const Rational e = coeff * scale;
      const long n = e.get_num().get_si();
      if (n > 0) {
        num.emplace_back(Var{kind, static_cast<int>(scale)}, static_cast<int>(n));
      } else {
        den.emplace_back(Var{kind, static_cast<int>(scale)}, static_cast<int>(-n));
      }
    };
    place(VarKind::ExpV, scaleV_, k.alongV);
    place(VarKind::ExpX, scaleX_, k.alongX);
    return RationalFunction(Poly::term(Rational(1), Monomial::fromFactors(num)),
                            Poly::term(Rational(1), Monomial::fromFactors(den)));
  }

  bool isPositive(const RationalFunction& base) const {
    if (auto c = base.numerator().constantValue(); c && base.isPolynomial()) return *c > 0;
    for (const auto& p : positive_) {
      const RationalFunction ratio = base / p;
      if (ratio.isPolynomial()) {
        if (auto c = ratio.numerator().constantValue(); c && *c > 0) return true;
      }
    }
    return false;
  }

  NormalForm convert(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::Constant:
        return {RationalFunction(Poly(e.value())), {}, std::nullopt};
      case Expr::Kind::Symbol:
        return {RationalFunction(Poly::variable(e.symbol())), {}, std::nullopt};
      case Expr::Kind::Sum: {
        NormalForm acc;
        for (const auto& t : e.operands()) acc = add(acc, convert(t));
        return acc;
      }
      case Expr::Kind::Product: {
        NormalForm acc{RationalFunction(Poly(1L)), {}, std::nullopt};
        for (const auto& f : e.operands()) acc = multiply(acc, convert(f));
        return acc;
      }
      case Expr::Kind::Power: {
        const NormalForm base = convert(e.operands().front());
        const Rational& p = e.exponent();
        if (isInteger(p)) return power(base, p.get_num().get_si());
        if (!base.radicalCoefficient.isZero()) throw UnsupportedExpression("nested square roots: " + toText(e));
        if (!isPositive(base.rational)) {
          throw UnsupportedExpression("half-integer power of a base not assumed positive: " + toText(e.operands().front()));
        }
        mpz_class floor;
        mpz_fdiv_q(floor.get_mpz_t(), p.get_num().get_mpz_t(), p.get_den().get_mpz_t());
        return {{}, base.rational.pow(floor.get_si()), base.rational};
      }
      case Expr::Kind::Exp:
        return {expGenerator(e.operands().front()), {}, std::nullopt};
    }
    return {};
  }

  const Assumptions& assumptions_;
  std::vector<RationalFunction> positive_;
  long scaleV_ = 1;
  long scaleX_ = 1;
};

}  // namespace

NormalForm canonicalize(const Expr& e, const Assumptions& assumptions) { return Canonicalizer(assumptions).run(e); }

bool isZero(const Expr& e, const Assumptions& assumptions) { return canonicalize(e, assumptions).isZero(); }

bool equivalent(const Expr& a, const Expr& b, const Assumptions& assumptions) { return isZero(a - b, assumptions); }

Expr simplify(const Expr& e, const Assumptions& assumptions) { return toExpr(canonicalize(e, assumptions)); }

Expr toExpr(const Poly& p) {
  std::vector<Expr> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<Expr> factors{Expr(c)};
    for (const auto& [var, e] : m.factors()) {
      switch (var.kind) {
        case VarKind::ExpV:
          factors.push_back(Expr::exp(Expr(ratio(e, var.index)) * Expr(Var::v())));
          break;
        case VarKind::ExpX:
          factors.push_back(Expr::exp(Expr(ratio(e, var.index)) * Expr(Var::x())));
          break;
        default:
          factors.push_back(pow(Expr(var), e));
      }
    }
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

Expr toExpr(const RationalFunction& r) {
  if (auto c = r.denominator().constantValue()) return Expr(Rational(1 / *c)) * toExpr(r.numerator());
  return Expr::product({toExpr(r.numerator()), pow(toExpr(r.denominator()), -1)});
}

Expr toExpr(const NormalForm& n) {
  Expr out = toExpr(n.rational);
  if (!n.radicalCoefficient.isZero()) out = out + toExpr(n.radicalCoefficient) * sqrt(toExpr(*n.radicand));
  return out;
}

Assumptions radicandAssumptions(const Expr& e) {
  Assumptions out;
  const auto visit = [&](const auto& self, const Expr& node) -> void {
    if (node.kind() == Expr::Kind::Power && !isInteger(node.exponent())) out.assumePositive(node.operands().front());
    for (const auto& op : node.operands()) self(self, op);
  };
  visit(visit, e);
  return out;
}

}  // namespace chainlab
