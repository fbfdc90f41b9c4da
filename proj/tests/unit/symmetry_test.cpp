#include <gtest/gtest.h>

#include "chainlab/errors.hpp"
#include "chainlab/normal_form.hpp"
#include "chainlab/parser.hpp"
#include "chainlab/symmetry.hpp"

namespace chainlab {
namespace {

const Expr u(Var::u(0));
const Expr u1(Var::u(1));
const Expr c(Var::c(0));
const Expr c1(Var::c(1));
const Expr ev = Expr::exp(Expr(Var::v()));

TEST(Symmetry, CoveringFlux) {
  EXPECT_TRUE(equivalent(buildCoveringFlux(ChainFamily::riccati()), -u - c1 / c));
  EXPECT_TRUE(equivalent(buildCoveringFlux(ChainFamily::abel()), -2 * u * u - c1 / c));
  EXPECT_TRUE(equivalent(specializeC(buildCoveringFlux(ChainFamily::riccati()), Expr(1)), -u));
}

TEST(Symmetry, Generators) {
  const VectorField r = buildGenerator(ChainFamily::riccati());
  EXPECT_TRUE(isZero(r.xi));
  EXPECT_TRUE(equivalent(r.phi, c * ev * u));
  EXPECT_TRUE(equivalent(r.psi, c * ev));
  const VectorField a = buildGenerator(ChainFamily::abel());
  EXPECT_TRUE(equivalent(a.psi, 2 * c * ev));
  for (const auto& field : {r, a}) {
    EXPECT_TRUE(equivalent(nonlocality(field), pow(c * ev * u, 2)));
    EXPECT_TRUE(equivalent(diff(field.phi, Var::v()), field.phi));
    EXPECT_FALSE(isZero(nonlocality(field)));
  }
}

TEST(Symmetry, FirstProlongation) {
  const ChainFamily fam = ChainFamily::riccati();
  const Expr f = buildCoveringFlux(fam);
  const ProlongedField pf = prolong(buildGenerator(fam), f, 1);
  ASSERT_EQ(pf.order(), 1);
  EXPECT_TRUE(equivalent(pf.coefficients[0], ev * (c1 * u + c * u1 + c * u * f)));

  const VectorField point{Expr(0), u, Expr(0)};
  EXPECT_TRUE(equivalent(prolong(point, f, 1).coefficients[0], u1));

  const VectorField unit = specialize(buildGenerator(fam), Expr(1));
  const Expr unitFlux = specializeC(f, Expr(1));
  EXPECT_TRUE(equivalent(prolong(unit, unitFlux, 1).coefficients[0], ev * (u1 - u * u)));
}

// xi = x, phi = -u/m prolongs to phi^(k) = -(k + 1/m) u^(k), so isobaric
// members are eigenvectors with eigenvalue -(N + 1/m).
TEST(Symmetry, ScalingPointSymmetryMatchesClassicalProlongation) {
  for (const ChainFamily fam : {ChainFamily::riccati(), ChainFamily::abel()}) {
    const int m = fam.exponent();
    const VectorField scaling{Expr(Var::x()), -u / Expr(m), Expr(0)};
    for (int n = 1; n <= 5; ++n) {
      const ChainEquation eq = generateChain(fam, n);
      const ProlongedField pf = prolong(scaling, buildCoveringFlux(fam), n);
      for (int k = 1; k <= n; ++k) {
        EXPECT_TRUE(equivalent(pf.coefficients[k - 1], -(Expr(k) + Expr(ratio(1, m))) * Expr(Var::u(k))));
      }
      const Expr lhs = applyProlonged(pf, eq.lhs);
      EXPECT_TRUE(equivalent(lhs, -(Expr(n) + Expr(ratio(1, m))) * eq.lhs.toExpr())) << fam.name() << n;
    }
  }
}

TEST(Symmetry, DeterminingSystems) {
  for (const ChainFamily fam : {ChainFamily::riccati(), ChainFamily::abel()}) {
    const VerificationReport r = verifyDeterminingEquations(fam);
    ASSERT_EQ(r.entries.size(), 6u);
    for (const auto& e : r.entries) {
      EXPECT_EQ(e.status, CheckStatus::Pass) << e.name;
      EXPECT_FALSE(e.anchor.empty());
    }
  }
}

TEST(Symmetry, FourthRiccatiDeterminingEquationWithUnitC) {
  const ChainFamily fam = ChainFamily::riccati();
  const VectorField field = specialize(buildGenerator(fam), Expr(1));
  const Expr flux = specializeC(buildCoveringFlux(fam), Expr(1));
  const auto residuals = determiningResiduals(fam, field, flux);
  ASSERT_EQ(residuals.size(), 6u);
  EXPECT_TRUE(isZero(residuals[3]));
}

TEST(Symmetry, DeterminingSystemRejectsWrongGenerator) {
  const ChainFamily fam = ChainFamily::riccati();
  VectorField wrong = buildGenerator(fam);
  wrong.psi = 2 * wrong.psi;
  bool anyNonzero = false;
  for (const auto& r : determiningResiduals(fam, wrong, buildCoveringFlux(fam))) anyNonzero = anyNonzero || !isZero(r);
  EXPECT_TRUE(anyNonzero);
}

class Invariance : public ::testing::TestWithParam<std::tuple<ChainFamily, int>> {};

TEST_P(Invariance, HoldsOnSolutions) {
  const auto [fam, n] = GetParam();
  const VerificationReport r = verifyInvariance(fam, n);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, CheckStatus::Pass) << r.entries[0].residual << " " << r.entries[0].detail;
  EXPECT_EQ(r.entries[0].residual, "chain: 0; covering: 0");
}

INSTANTIATE_TEST_SUITE_P(Orders, Invariance,
                         ::testing::Combine(::testing::Values(ChainFamily::riccati(), ChainFamily::abel()),
                                            ::testing::Range(1, 9)),
                         [](const auto& info) {
                           return std::get<0>(info.param).name() + std::to_string(std::get<1>(info.param));
                         });

TEST(Symmetry, InvarianceWithConcreteC) {
  for (const char* src : {"1", "x^2 + 1", "exp(2*x)", "x*exp(x/2)", "(x + 1)^(1/2)"}) {
    for (const ChainFamily fam : {ChainFamily::riccati(), ChainFamily::abel()}) {
      const VerificationReport r = verifyInvariance(fam, 3, parseExpression(src));
      EXPECT_EQ(r.status(), CheckStatus::Pass) << src << " " << fam.name();
    }
  }
}

TEST(Symmetry, InvarianceOutsideCanonicalClassIsInconclusive) {
  const VerificationReport r = verifyInvariance(ChainFamily::riccati(), 2, parseExpression("exp(x*x)"));
  EXPECT_EQ(r.status(), CheckStatus::Inconclusive);
}

TEST(Symmetry, ZeroCIsRejected) {
  EXPECT_THROW(verifyInvariance(ChainFamily::riccati(), 2, parseExpression("x - x")), DomainError);
}

TEST(Symmetry, InvariantFunctions) {
  for (const ChainFamily fam : {ChainFamily::riccati(), ChainFamily::abel()}) {
    const VerificationReport r = checkInvariantFunctions(fam);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_EQ(r.status(), CheckStatus::Pass);
  }
}

}  // namespace
}  // namespace chainlab
