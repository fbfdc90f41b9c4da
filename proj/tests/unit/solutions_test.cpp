#include <gtest/gtest.h>

#include <cmath>

#include "chainlab/errors.hpp"
#include "chainlab/solutions.hpp"

namespace chainlab {
namespace {

const Poly x = Poly::variable(Var::x());
Poly k(int i) { return Poly::variable(Var::param(i)); }

std::vector<Poly> consts(std::initializer_list<Rational> values) { return rationalConstants(std::vector<Rational>(values)); }

TEST(Solutions, RiccatiExamples) {
  const SolutionFamily s1 = riccatiSolution(1, symbolicConstants(1));
  EXPECT_EQ(s1.numerator, Poly(1L));
  EXPECT_EQ(s1.denominator, x + k(1));

  const SolutionFamily s2 = riccatiSolution(2, symbolicConstants(2));
  EXPECT_EQ(s2.numerator, Poly(2L) * (x + k(1)));
  EXPECT_EQ(s2.denominator, x * x + Poly(2L) * k(1) * x - Poly(2L) * k(2));

  const SolutionFamily s3 = riccatiSolution(3, symbolicConstants(3));
  EXPECT_EQ(s3.numerator, Poly(3L) * (x * x + Poly(2L) * k(1) * x - Poly(2L) * k(2)));

  const SolutionFamily zero = riccatiSolution(2, consts({0, 0}));
  EXPECT_EQ(zero.numerator, Poly(2L) * x);
  EXPECT_EQ(zero.denominator, x * x);
}

// Denominators from an independent CAS evaluation of the constant convention.
TEST(Solutions, RiccatiDenominatorsAtRationalConstants) {
  EXPECT_EQ(riccatiSolution(3, consts({1, 1, 1})).denominator, x.pow(3) + Poly(3L) * x * x - Poly(6L) * x - Poly(3L));
  EXPECT_EQ(riccatiSolution(4, consts({1, 2, 3, 4})).denominator,
            x.pow(4) + Poly(4L) * x.pow(3) - Poly(24L) * x * x - Poly(36L) * x + Poly(16L));
  EXPECT_EQ(riccatiSolution(6, consts({1, 0, 0, 0, 0, 1})).denominator, x.pow(6) + Poly(6L) * x.pow(5) + Poly(6L));
  EXPECT_EQ(riccatiSolution(2, consts({ratio(1, 2), ratio(-3, 4)})).denominator, x * x + x + Poly(ratio(3, 2)));
}

TEST(Solutions, Evaluation) {
  EXPECT_EQ(*evaluateSolution(riccatiSolution(2, consts({1, 0})), Rational(1)).exact, ratio(4, 3));
  EXPECT_EQ(*evaluateSolution(riccatiSolution(2, consts({0, 0})), Rational(1)).exact, Rational(2));
  EXPECT_EQ(*evaluateSolution(riccatiSolution(2, consts({ratio(1, 2), ratio(-3, 4)})), Rational(1)).exact, ratio(6, 7));
  EXPECT_EQ(*evaluateSolution(riccatiSolution(4, consts({1, 2, 3, 4})), ratio(1, 2)).exact, ratio(904, 119));
  EXPECT_EQ(*evaluateSolution(riccatiSolution(6, consts({1, 0, 0, 0, 0, 1})), Rational(1)).exact, ratio(36, 13));
  try {
    evaluateSolution(riccatiSolution(2, consts({0, 0})), Rational(0));
    FAIL() << "expected a pole";
  } catch (const PoleAt& p) {
    EXPECT_EQ(p.x(), 0.0);
  }
  EXPECT_THROW(evaluateSolution(riccatiSolution(2, symbolicConstants(2)), Rational(1)), DomainError);
}

TEST(Solutions, AbelExamples) {
  const SolutionFamily a2 = abelSolution(2, consts({0, 0}));
  const SolutionValue at2 = evaluateSolution(a2, Rational(2));
  ASSERT_TRUE(at2.real);
  EXPECT_EQ(at2.numerator * at2.numerator / at2.denominator, ratio(3, 4));
  EXPECT_NEAR(at2.approximate * at2.approximate, 0.75, 1e-15);
  const SolutionValue neg = evaluateSolution(a2, Rational(-1));
  EXPECT_FALSE(neg.real);
  EXPECT_LT(neg.denominator, 0);

  const SolutionFamily a3 = abelSolution(3, consts({1, 2, 0}));
  EXPECT_EQ(a3.denominator, Poly(ratio(2, 5)) * x.pow(5) + x.pow(4) + Poly(ratio(10, 3)) * x.pow(3) + Poly(4L) * x * x +
                                Poly(8L) * x);
  EXPECT_NEAR(evaluateSolution(a3, Rational(1)).approximate, 0.977842164566849, 1e-14);

  const SolutionFamily a4 = abelSolution(4, consts({0, 0, 1, -1}));
  EXPECT_EQ(a4.denominator, Poly(ratio(2, 7)) * x.pow(7) + x.pow(4) + Poly(2L) * x - Poly(1L));
  const SolutionValue v4 = evaluateSolution(a4, Rational(1));
  EXPECT_EQ(v4.numerator * v4.numerator / v4.denominator, ratio(7, 4));
}

TEST(Solutions, StructuralProperties) {
  for (int n = 1; n <= 8; ++n) {
    const SolutionFamily r = riccatiSolution(n, symbolicConstants(n));
    EXPECT_EQ(r.numerator, r.denominator.derivative(Var::x())) << n;
  }
  for (int n = 1; n <= 6; ++n) {
    const SolutionFamily a = abelSolution(n, symbolicConstants(n));
    EXPECT_EQ(a.denominator.derivative(Var::x()), Poly(2L) * a.numerator * a.numerator) << n;
  }
  EXPECT_THROW(riccatiSolution(3, symbolicConstants(2)), DomainError);
}

TEST(Solutions, HandResidualOracles) {
  // u = 2/x: u'' + 3uu' + u^3 = 4/x^3 - 12/x^3 + 8/x^3.
  EXPECT_TRUE(verifySolutionSymbolic(generateChain(ChainFamily::riccati(), 2), riccatiSolution(2, consts({0, 0}))).isZero());
  // u = (2x)^(-1/2): u' + u^3 = 0.
  EXPECT_TRUE(verifySolutionSymbolic(generateChain(ChainFamily::abel(), 1), abelSolution(1, consts({0}))).isZero());
  // u = 3/x is not a solution of the second member.
  SolutionFamily wrong = riccatiSolution(2, consts({0, 0}));
  wrong.numerator = Poly(3L) * x;
  EXPECT_FALSE(verifySolutionSymbolic(generateChain(ChainFamily::riccati(), 2), wrong).isZero());
  EXPECT_THROW(verifySolutionSymbolic(generateChain(ChainFamily::riccati(), 3), riccatiSolution(2, consts({0, 0}))), DomainError);
}

TEST(Solutions, SymbolicResidualRiccati) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_TRUE(verifySolutionSymbolic(generateChain(ChainFamily::riccati(), n), riccatiSolution(n, symbolicConstants(n))).isZero()) << n;
  }
}

TEST(Solutions, SymbolicResidualAbel) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_TRUE(verifySolutionSymbolic(generateChain(ChainFamily::abel(), n), abelSolution(n, symbolicConstants(n))).isZero()) << n;
  }
}

TEST(Solutions, RecursiveAgreesWithDirect) {
  for (const ChainFamily fam : {ChainFamily::riccati(), ChainFamily::abel()}) {
    for (int n = 1; n <= 5; ++n) {
      const SolutionFamily rec = recursiveSolve(fam, n, symbolicConstants(n));
      const SolutionFamily direct = directSolution(fam, n, recursiveToDirectConstants(rec));
      EXPECT_TRUE(sameSolution(direct, rec)) << fam.name() << n;
      EXPECT_TRUE(verifySolutionSymbolic(generateChain(fam, n), rec).isZero()) << fam.name() << n;
    }
  }
  EXPECT_FALSE(sameSolution(riccatiSolution(2, consts({0, 0})), riccatiSolution(2, consts({1, 0}))));
}

TEST(Solutions, LinearizationOracle) {
  for (int n = 1; n <= 6; ++n) {
    const Poly psi = genericPolynomial(n);
    EXPECT_EQ(psi.degree(Var::x()), n);
    EXPECT_TRUE(verifySolutionSymbolic(generateChain(ChainFamily::riccati(), n), linearizedRiccati(n, psi)).isZero()) << n;
  }
}

TEST(Solutions, PrintedForms) {
  const VerificationReport r = verifyPrintedSolutions();
  EXPECT_EQ(r.status(), CheckStatus::Pass);
  bool sawMinus = false, sawCorrected = false;
  for (const auto& e : r.entries) {
    EXPECT_FALSE(e.anchor.empty());
    if (e.name == "printed solution (leading minus)") {
      sawMinus = true;
      EXPECT_NE(e.residual, "0");
      EXPECT_NE(e.detail.find("erratum"), std::string::npos);
    }
    if (e.name == "sign-corrected solution") {
      sawCorrected = true;
      EXPECT_EQ(e.residual, "0");
    }
  }
  EXPECT_TRUE(sawMinus);
  EXPECT_TRUE(sawCorrected);
  EXPECT_FALSE(verifySolutionSymbolic(generateChain(ChainFamily::riccati(), 4), printedSolution(ChainFamily::riccati(), 4)).isZero());
}

TEST(Solutions, DerivativeTowerMatchesClosedForm) {
  // u = 2/x: u' = -2/x^2, u'' = 4/x^3.
  const auto tower = derivativeTower(riccatiSolution(2, consts({0, 0})), Rational(2), 3);
  ASSERT_EQ(tower.size(), 3u);
  EXPECT_DOUBLE_EQ(tower[0], 1.0);
  EXPECT_DOUBLE_EQ(tower[1], -0.5);
  EXPECT_DOUBLE_EQ(tower[2], 0.5);
  // u = (2x)^(-1/2): u' = -(2x)^(-3/2).
  const auto abel = derivativeTower(abelSolution(1, consts({0})), Rational(2), 2);
  EXPECT_DOUBLE_EQ(abel[0], 0.5);
  EXPECT_DOUBLE_EQ(abel[1], -0.125);
}

TEST(Solutions, Rendering) {
  EXPECT_EQ(solutionText(riccatiSolution(2, consts({0, 0}))), "u = (2*x)/(x^2)");
  EXPECT_EQ(solutionLatex(abelSolution(1, consts({0}))), "u = \\frac{1}{\\sqrt{2 x}}");
}

}  // namespace
}  // namespace chainlab
