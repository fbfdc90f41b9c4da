#include <gtest/gtest.h>

#include "chainlab/errors.hpp"
#include "chainlab/reduction.hpp"

namespace chainlab {
namespace {

const DiffPoly u = DiffPoly::u(0);
const DiffPoly z = DiffPoly::zeta(0);
const DiffPoly z1 = DiffPoly::zeta(1);

TEST(Reduction, SubstitutionTables) {
  const SubstitutionTable r1 = buildSubstitutionTable(ChainFamily::riccati(), 1);
  EXPECT_EQ(r1.entry(1), u * (z - u));

  const SubstitutionTable r2 = buildSubstitutionTable(ChainFamily::riccati(), 2);
  EXPECT_EQ(r2.entry(2), u * z1 + u * (z - u) * z - DiffPoly(2L) * u * u * (z - u));

  const SubstitutionTable a2 = buildSubstitutionTable(ChainFamily::abel(), 2);
  EXPECT_EQ(a2.entry(1), u * (z - u * u));
  EXPECT_EQ(a2.entry(2), u * z1 + u * (z - u * u) * z - DiffPoly(3L) * u.pow(3) * (z - u * u));
}

TEST(Reduction, LowOrderTargets) {
  const DiffPoly first = z1 + z * z;
  EXPECT_EQ(reduceChain(generateChain(ChainFamily::riccati(), 2)).reduced, first);
  EXPECT_EQ(reduceChain(generateChain(ChainFamily::abel(), 2)).reduced, first);
  const ReductionResult a3 = reduceChain(generateChain(ChainFamily::abel(), 3));
  EXPECT_EQ(a3.reduced, DiffPoly::zeta(2) + DiffPoly(3L) * z * z1 + z.pow(3));
  EXPECT_EQ(a3.target.family, ChainFamily::riccati());
  EXPECT_EQ(a3.target.order, 2);
  // Riccati third member in zeta, from an independent CAS expansion.
  const ReductionResult a4 = reduceChain(generateChain(ChainFamily::abel(), 4));
  EXPECT_EQ(a4.reduced, DiffPoly::zeta(3) + DiffPoly(4L) * z * DiffPoly::zeta(2) + DiffPoly(3L) * z1 * z1 +
                            DiffPoly(6L) * z * z * z1 + z.pow(4));
}

class FactorizationIdentity : public ::testing::TestWithParam<std::tuple<ChainFamily, int>> {};

TEST_P(FactorizationIdentity, SubstitutedMemberIsUTimesRiccati) {
  const auto [fam, n] = GetParam();
  const ReductionResult res = reduceChain(generateChain(fam, n));
  EXPECT_TRUE(res.residual.isZero());
  EXPECT_EQ(res.substituted, u * res.reduced);
  EXPECT_EQ(res.reduced, generateChain(ChainFamily::riccati(), n - 1).lhs.renamed(Dependent::U, Dependent::Zeta));
  for (const auto& [mono, coeff] : res.substituted.terms()) EXPECT_GE(mono.degree(Var::u(0)), 1);
  EXPECT_EQ(res.substituted.topOrder(Dependent::U), 0);
}

INSTANTIATE_TEST_SUITE_P(Orders, FactorizationIdentity,
                         ::testing::Combine(::testing::Values(ChainFamily::riccati(), ChainFamily::abel()),
                                            ::testing::Range(2, 11)),
                         [](const auto& info) {
                           return std::get<0>(info.param).name() + std::to_string(std::get<1>(info.param));
                         });

TEST(Reduction, Ladders) {
  for (const ChainFamily fam : {ChainFamily::riccati(), ChainFamily::abel()}) {
    const auto ladder = reductionLadder(fam, 4);
    ASSERT_EQ(ladder.size(), 3u);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(ladder[i].family, ChainFamily::riccati());
      EXPECT_EQ(ladder[i].order, 3 - i);
    }
  }
  const auto two = reductionLadder(ChainFamily::riccati(), 2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].lhs, DiffPoly::u(1) + u * u);
  for (int n = 2; n <= 10; ++n) EXPECT_EQ(reductionLadder(ChainFamily::abel(), n).size(), static_cast<std::size_t>(n - 1));
}

TEST(Reduction, Errors) {
  EXPECT_THROW(reduceChain(generateChain(ChainFamily::riccati(), 1)), DomainError);
  ChainEquation broken = generateChain(ChainFamily::abel(), 3);
  broken.lhs += DiffPoly::u(1, 2);
  EXPECT_THROW(reduceChain(broken), FactorizationFailure);
}

}  // namespace
}  // namespace chainlab
