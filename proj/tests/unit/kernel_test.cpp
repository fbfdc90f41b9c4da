#include <gtest/gtest.h>

#include <random>

#include "chainlab/diffpoly.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/expr.hpp"
#include "chainlab/normal_form.hpp"
#include "chainlab/poly.hpp"
#include "chainlab/rational.hpp"

namespace chainlab {
namespace {

DiffPoly randomDiffPoly(std::mt19937& rng) {
  std::uniform_int_distribution<int> terms(1, 4), coeff(-5, 5), order(0, 3), power(1, 3), factors(1, 3);
  DiffPoly p;
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    DiffPoly t(static_cast<long>(coeff(rng)));
    const int f = factors(rng);
    for (int j = 0; j < f; ++j) t *= DiffPoly::u(order(rng), power(rng));
    p += t;
  }
  return p;
}

Expr randomLocalExpr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 5);
  const Expr u(Var::u(0)), x(Var::x()), c(Var::c(0));
  if (depth == 0) {
    switch (pick(rng) % 4) {
      case 0: return u;
      case 1: return x;
      case 2: return c;
      default: return Expr(ratio(pick(rng) + 1, 2));
    }
  }
  switch (pick(rng)) {
    case 0: return randomLocalExpr(rng, depth - 1) + randomLocalExpr(rng, depth - 1);
    case 1: return randomLocalExpr(rng, depth - 1) * randomLocalExpr(rng, depth - 1);
    case 2: return randomLocalExpr(rng, depth - 1) - x * u;
    case 3: return pow(randomLocalExpr(rng, depth - 1), 2);
    case 4: return Expr::exp(Expr(Var::v())) * randomLocalExpr(rng, depth - 1);
    default: return randomLocalExpr(rng, depth - 1) / (u * u + 1);
  }
}

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(parseRational("2/3"), ratio(2, 3));
  EXPECT_EQ(parseRational("-4/6"), ratio(-2, 3));
  EXPECT_EQ(parseRational("+7"), Rational(7));
  EXPECT_EQ(parseRational("0/5").get_den(), 1);
  EXPECT_THROW(parseRational("0.5"), DomainError);
  EXPECT_THROW(parseRational("1/0"), DomainError);
  EXPECT_THROW(parseRational(""), DomainError);
  EXPECT_THROW(parseRational("2/"), DomainError);
}

TEST(Rational, PowerInvertsNegativeExponents) {
  EXPECT_EQ(pow(ratio(2, 3), 3), ratio(8, 27));
  EXPECT_EQ(pow(ratio(2, 3), -2), ratio(9, 4));
  EXPECT_THROW(pow(Rational(0), -1), DomainError);
}

TEST(Poly, BinomialExpansion) {
  const Poly x = Poly::variable(Var::x());
  const Poly p = (x + Poly(1L)).pow(5);
  const long binom[] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(p.coefficient(k == 0 ? Monomial() : Monomial(Var::x(), k)), Rational(binom[k]));
  EXPECT_EQ(p.degree(Var::x()), 5);
}

TEST(Poly, MultivariateGcdIsMonic) {
  const Poly x = Poly::variable(Var::x());
  const Poly k = Poly::variable(Var::param(1));
  const Poly common = x * x + k * x + Poly(3L);
  const Poly a = Poly(4L) * common * (x - k);
  const Poly b = Poly(-6L) * common * (x + Poly(2L));
  EXPECT_EQ(gcd(a, b), common);
  EXPECT_EQ(gcd(Poly(), Poly()), Poly());
  ASSERT_TRUE(a.dividedBy(common).has_value());
  EXPECT_EQ(*a.dividedBy(common), Poly(4L) * (x - k));
  EXPECT_FALSE(a.dividedBy(x + Poly(7L)).has_value());
}

TEST(Poly, SturmCountsDistinctRoots) {
  const Poly x = Poly::variable(Var::x());
  const Poly p = (x - Poly(1L)) * (x - Poly(1L)) * (x + Poly(2L)) * (x * x + Poly(1L));
  const Poly sf = univariate::squarefree(p, Var::x());
  EXPECT_EQ(sf.degree(Var::x()), 4);
  EXPECT_EQ(univariate::sturmCount(sf, Var::x(), Rational(-3), Rational(3)), 2);
  EXPECT_EQ(univariate::sturmCount(sf, Var::x(), Rational(0), Rational(1)), 1);
  EXPECT_EQ(univariate::sturmCount(sf, Var::x(), Rational(1), Rational(3)), 0);
}

TEST(DiffPoly, TotalDerivativeExamples) {
  const DiffPoly u = DiffPoly::u(0), u1 = DiffPoly::u(1), u2 = DiffPoly::u(2), u3 = DiffPoly::u(3);
  EXPECT_EQ(DiffPoly::u(0, 2).totalDerivative(), DiffPoly(2L) * u * u1);
  EXPECT_EQ((u1 + u * u).totalDerivative(), u2 + DiffPoly(2L) * u * u1);
  const DiffPoly e2 = u2 + DiffPoly(3L) * u * u1 + u.pow(3);
  EXPECT_EQ(e2.totalDerivative(),
            u3 + DiffPoly(3L) * u * u2 + DiffPoly(3L) * u1 * u1 + DiffPoly(3L) * u * u * u1);
}

TEST(DiffPoly, TotalDerivativeIsADerivation) {
  std::mt19937 rng(20261017);
  for (int i = 0; i < 1000; ++i) {
    const DiffPoly p = randomDiffPoly(rng);
    const DiffPoly q = randomDiffPoly(rng);
    ASSERT_EQ((p * q).totalDerivative(), p.totalDerivative() * q + p * q.totalDerivative()) << toText(p) << " | " << toText(q);
    ASSERT_EQ((p + q).totalDerivative(), p.totalDerivative() + q.totalDerivative());
    ASSERT_EQ((DiffPoly(ratio(-3, 7)) * p).totalDerivative(), DiffPoly(ratio(-3, 7)) * p.totalDerivative());
  }
}

TEST(DiffPoly, CanonicalUnderReassociation) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const DiffPoly a = randomDiffPoly(rng), b = randomDiffPoly(rng), c = randomDiffPoly(rng);
    ASSERT_EQ((a + b) + c, c + (b + a));
    ASSERT_EQ((a * b) * c, b * (c * a));
    ASSERT_EQ(a * (b + c), a * b + c * a);
  }
}

TEST(DiffPoly, RejectsNonJetVariables) {
  EXPECT_THROW(DiffPoly(Poly::variable(Var::x())), DomainError);
  EXPECT_EQ(DiffPoly::u(3).topOrder(), 3);
  EXPECT_EQ(DiffPoly(5L).topOrder(), -1);
}

TEST(DiffPoly, TextAndLatexOrdering) {
  const DiffPoly e = DiffPoly::u(0).pow(3) + DiffPoly(3L) * DiffPoly::u(0) * DiffPoly::u(1) + DiffPoly::u(2);
  EXPECT_EQ(toText(e), "u_xx + 3*u*u_x + u^3");
  EXPECT_EQ(toLatex(e), "u_{xx} + 3 u u_{x} + u^{3}");
}

TEST(Expr, PartialDerivativeExamples) {
  const Expr c(Var::c(0)), c1(Var::c(1)), c2(Var::c(2)), u(Var::u(0));
  const Expr ev = Expr::exp(Expr(Var::v()));
  EXPECT_TRUE(equivalent(diff(c * ev * u, Var::u(0)), c * ev));
  EXPECT_TRUE(equivalent(diff(c * ev * u, Var::x()), c1 * ev * u));
  const Expr f = -u - c1 / c;
  EXPECT_TRUE(equivalent(diff(f, Var::x()), -(c2 * c - c1 * c1) / (c * c)));
}

TEST(Expr, CoveringTotalDerivativeExamples) {
  const Expr c(Var::c(0)), c1(Var::c(1)), u(Var::u(0)), u1(Var::u(1)), v(Var::v());
  const Expr ev = Expr::exp(v);
  const Expr f = -u - c1 / c;
  EXPECT_TRUE(equivalent(coveringTotalDerivative(v, f), f));
  EXPECT_TRUE(equivalent(coveringTotalDerivative(ev, f), ev * f));
  EXPECT_TRUE(equivalent(coveringTotalDerivative(c * ev * u, f), ev * (c1 * u + c * u1 + c * u * f)));
  EXPECT_THROW(totalDerivative(v * u), DomainError);
}

TEST(Expr, ZeroRecognition) {
  const Expr u(Var::u(0)), ev = Expr::exp(Expr(Var::v()));
  EXPECT_TRUE(isZero(-u * ev + u * ev));
  EXPECT_FALSE(isZero(ev * (u - u * u)));
  EXPECT_TRUE(isZero(Expr::exp(Expr(Var::x())) * Expr::exp(-Expr(Var::x())) - 1));
}

TEST(Expr, PartialsCommuteAndZeroIsDecided) {
  std::mt19937 rng(99);
  for (int i = 0; i < 300; ++i) {
    const Expr e = randomLocalExpr(rng, 3);
    ASSERT_TRUE(isZero(diff(diff(e, Var::u(0)), Var::x()) - diff(diff(e, Var::x()), Var::u(0)))) << toText(e);
    ASSERT_TRUE(isZero(e - e));
    ASSERT_FALSE(isZero(e * e + 1)) << toText(e);
  }
}

TEST(Expr, HalfIntegerPowersNeedPositivity) {
  const Expr base = Expr(Var::x()) + 1;
  const Expr r = Expr::power(base, ratio(1, 2));
  Assumptions positive;
  positive.assumePositive(base);
  EXPECT_TRUE(isZero(r * r - base, positive));
  EXPECT_THROW(isZero(r * r - base), UnsupportedExpression);
}

TEST(Expr, TwoRadicandsAreUnsupported) {
  const Expr x(Var::x());
  Assumptions positive;
  positive.assumePositive(x + 1).assumePositive(x + 2);
  EXPECT_THROW(canonicalize(sqrt(x + 1) + sqrt(x + 2), positive), UnsupportedExpression);
}

TEST(Expr, SpecializeReplacesTheCTower) {
  const Expr e = Expr(Var::c(1)) / Expr(Var::c(0));
  const Expr x(Var::x());
  EXPECT_EQ(maxCDerivative(e), 1);
  EXPECT_TRUE(equivalent(specializeC(e, x * x + 1), 2 * x / (x * x + 1)));
  EXPECT_TRUE(equivalent(specializeC(e, Expr::exp(2 * x)), Expr(2)));
}

}  // namespace
}  // namespace chainlab
